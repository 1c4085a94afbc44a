#pragma once

#include <span>
#include <vector>

#include "chulink/coupling.hpp"

namespace chulink {

struct RfChain {
  double generator_R = 50.0;                 // [Ω]
  double lna_Rin = 50.0;                     // [Ω]
  double lna_gain_beta = 10.0;               // voltage gain
  double noise_figure_Nf = 3.1622776601683795;  // linear, 5 dB
  double temperature_T = 300.0;              // [K]

  void validate() const;
};

/// Thermal noise voltage PSDs at the antenna ports and the LNA input [V²/Hz].
/// In the near field the transmit/receive noise voltages are correlated through
/// the mutual impedance (both cross-PSDs equal 4kT Re[Z_TR] since Z_TR = Z_RT);
/// in the far field they are uncorrelated and s_cross is zero.
struct NoisePsdSet {
  double s_vt;
  double s_vr;
  double s_cross;
  double s_lna;
};

NoisePsdSet noise_sources(const TwoPortZ& z, const RfChain& rf);

struct XYTerms {
  double x;
  double y;
};

/// X = |Z_RT|² Re Z_T + (R + conj Z_T) Z_TR Re Z_RT + (R + Z_T) conj Z_TR Re Z_TR
///     + |R + Z_T|² Re Z_R
/// Y = |(R_in + Z_R)(R + Z_T) - Z_TR²|²
/// Throws SingularityError when Y vanishes.
XYTerms xy_terms(const TwoPortZ& z, const RfChain& rf);

/// |H|² = β² R_in² |Z_RT|² / Y.
double channel_gain_sq(const TwoPortZ& z, const RfChain& rf);

/// N = k_b T (R_in / R) [(N_f - 1) + β² R_in X / Y]; the output noise PSD
/// referred to the generator's available-power normalization.
double noise_psd(const TwoPortZ& z, const RfChain& rf);

struct LinkPoint {
  double h_gain_sq;
  double noise_psd;
  double snr;
};

/// Frequency grid paired with one value per frequency.
struct SpectralCurve {
  std::vector<double> freq_hz;
  std::vector<double> values;

  std::size_t size() const { return freq_hz.size(); }
  void validate() const;
};

/// Antennas, geometry and RF chain of one link; evaluates the channel at any
/// frequency. Geometry is fixed in metres, so d/λ varies across a band.
struct LinkModel {
  AntennaSpec ant_t;
  AntennaSpec ant_r;
  LinkGeometry geom;
  RfChain rf;
  RegimeChoice regime = RegimeChoice::automatic;
  FarFieldGains gains;

  void validate() const;
  TwoPortZ two_port(double f) const;
  /// SNR uses the supplied transmit PSD pt [W/Hz].
  LinkPoint evaluate(double f, double pt) const;
  /// γ(f) = |H(f)|² / N(f).
  double gamma(double f) const;
};

/// SNR(f) = pt(f) |H(f)|² / N(f) on the given grid. pt must be sampled on
/// exactly that grid and be non-negative.
SpectralCurve snr_curve(const LinkModel& model, std::span<const double> band_freqs,
                        const SpectralCurve& pt);

/// γ(f) sampled on a grid.
SpectralCurve gamma_curve(const LinkModel& model, std::span<const double> band_freqs);

}  // namespace chulink
