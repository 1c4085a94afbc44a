#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "chulink/link_channel.hpp"
#include "chulink/rate_engine.hpp"

namespace chulink {

enum class Experiment { snr_distance, rate_size, rate_bandwidth, opa_compare, point };

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string& s);

enum class SweepScale { linear, log };

/// The single swept variable of an experiment. The variable name is fixed by
/// the experiment: d_over_lambda, a_over_lambda or bandwidth_ratio.
struct SweepSpec {
  std::string variable;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 201;
  SweepScale scale = SweepScale::linear;

  std::vector<double> values() const;
};

/// One fixed distance (in wavelengths at the reference frequency) and the
/// coupling model used there.
struct DistancePanel {
  double d_over_lambda;
  RegimeChoice regime;
};

/// Fully resolved experiment. Electrical quantities (λ/a, d/λ) refer to the
/// reference frequency: f_c, or f_min for the bandwidth-ratio sweep.
struct ExperimentConfig {
  Experiment experiment = Experiment::point;

  double lambda_over_a = 20.0;
  double ladder_R = 50.0;  // resistance inside each Chu ladder [Ω]
  RfChain rf;

  std::vector<OrientationPreset> orientations;
  RegimeChoice regime = RegimeChoice::automatic;

  double f_c = 1e9;
  double fractional_width = 0.2;  // W / f_c
  double f_min = 5e9;
  std::size_t grid_points = 2001;
  double p_max = 10e-3;

  SweepSpec sweep;
  std::vector<DistancePanel> panels;
  double d_over_lambda = 0.15;  // point experiment

  bool ff_column = true;            // snr-distance: add the far-field-formula SNR
  bool peak_normalization = false;  // snr-distance: report band-peak SNR and d/λ_p

  static ExperimentConfig defaults(Experiment e);
  /// Starts from defaults(experiment) and overrides every key present.
  /// Unknown keys are rejected.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);

  nlohmann::json to_json() const;
  void validate() const;

  double reference_frequency() const;
  double reference_wavelength() const;
  Band band() const;  // f_c ± W/2 (not used by the bandwidth-ratio sweep)
  AntennaSpec antenna() const;
};

/// Named equal-length columns plus a JSON metadata block
/// {"config": ..., "summary": ...}.
struct SweepTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  nlohmann::json metadata = nlohmann::json::object();

  void add_column(std::string name, std::vector<double> values);
  const std::vector<double>& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  std::size_t rows() const;
  void validate() const;

  bool operator==(const SweepTable& other) const = default;
};

SweepTable run_snr_vs_distance(const ExperimentConfig& cfg);
SweepTable run_rate_vs_size(const ExperimentConfig& cfg);
SweepTable run_rate_vs_bandwidth(const ExperimentConfig& cfg);
SweepTable run_opa_comparison(const ExperimentConfig& cfg);
SweepTable run_point(const ExperimentConfig& cfg);
SweepTable run_experiment(const ExperimentConfig& cfg);

/// First +→- sign change of diff along x, linearly interpolated.
/// Returns false when there is none.
bool locate_crossover(const std::vector<double>& x, const std::vector<double>& diff,
                      double* where);

/// '#'-prefixed pretty JSON metadata, a header row, then one row per point
/// with 17 significant digits.
void emit_csv(const SweepTable& table, std::ostream& out);
void emit_csv(const SweepTable& table, const std::string& path);

SweepTable read_csv(std::istream& in);
SweepTable read_csv_file(const std::string& path);

/// Column naming used by the panel experiments, e.g. "rate_colinear_d0.15_nf".
std::string panel_column(const std::string& prefix, const OrientationPreset& o,
                         const DistancePanel& p);

}  // namespace chulink
