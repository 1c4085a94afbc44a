// Command-line driver: one subcommand per experiment, CSV on stdout or --out.
//
// Exit codes: 0 success, 2 configuration/validation error, 3 numerical error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "chulink/errors.hpp"
#include "chulink/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config_path;
  std::string out_path;
  std::optional<std::string> orientation;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<std::string> regime;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> points;
  std::optional<double> d_over_lambda;
  bool print_config = false;
};

void add_common_flags(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "JSON experiment file; flags override its values");
  sub->add_option("--out", o.out_path, "CSV destination (default: stdout)");
  sub->add_option("--orientation", o.orientation, "colinear | parallel | custom")
      ->check(CLI::IsMember({"colinear", "parallel", "custom"}));
  sub->add_option("--beta", o.beta, "transmit tilt [rad] (custom orientation)");
  sub->add_option("--gamma", o.gamma, "receive tilt [rad] (custom orientation)");
  sub->add_option("--regime", o.regime, "nf | ff | auto")
      ->check(CLI::IsMember({"nf", "ff", "auto"}));
  sub->add_option("--grid", o.grid, "frequency grid points per rate integral (odd)");
  sub->add_option("--points", o.points, "sweep points");
  sub->add_flag("--print-config", o.print_config, "print the resolved config as JSON and exit");
}

chulink::ExperimentConfig resolve(chulink::Experiment e, const Overrides& o) {
  using namespace chulink;
  ExperimentConfig cfg = o.config_path.empty() ? ExperimentConfig::defaults(e)
                                               : ExperimentConfig::load(o.config_path);
  if (cfg.experiment != e) {
    throw ConfigError("config file describes '" + to_string(cfg.experiment) +
                      "', not '" + to_string(e) + "'");
  }
  const bool angles = o.beta || o.gamma;
  if (angles && o.orientation && *o.orientation != "custom") {
    throw ConfigError("--beta/--gamma apply only to --orientation custom");
  }
  if (o.orientation || angles) {
    const std::string name = o.orientation.value_or("custom");
    cfg.orientations = {OrientationPreset::parse(name, o.beta.value_or(0.0), o.gamma.value_or(0.0))};
  }
  if (o.regime) {
    cfg.regime = parse_regime(*o.regime);
    for (auto& p : cfg.panels) p.regime = cfg.regime;
  }
  if (o.grid) cfg.grid_points = *o.grid;
  if (o.points) cfg.sweep.points = *o.points;
  if (o.d_over_lambda) cfg.d_over_lambda = *o.d_over_lambda;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace chulink;

  CLI::App app{"Chu-antenna link simulator: SNR and achievable-rate sweeps"};
  app.require_subcommand(1);
  Overrides o;

  const std::pair<const char*, const char*> subs[] = {
      {"snr-distance", "SNR vs d/λ for colinear and parallel antennas"},
      {"rate-size", "uniform-power rate vs a/λ at fixed distances"},
      {"rate-bandwidth", "uniform-power rate vs f_max/f_min at fixed distances"},
      {"opa-compare", "rate with and without optimal power allocation vs d/λ"},
      {"point", "impedances, gain, noise, SNR and rates at one configuration"},
  };
  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common_flags(sub, o);
    if (std::string(name) == "point") {
      sub->add_option("--d-over-lambda", o.d_over_lambda, "separation in wavelengths at f_c");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const Experiment e = parse_experiment(app.get_subcommands().front()->get_name());
    const ExperimentConfig cfg = resolve(e, o);
    if (o.print_config) {
      std::cout << cfg.to_json().dump(2) << '\n';
      return 0;
    }
    const SweepTable table = run_experiment(cfg);
    if (o.out_path.empty()) {
      emit_csv(table, std::cout);
    } else {
      emit_csv(table, o.out_path);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
