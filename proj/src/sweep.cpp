#include "chulink/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <thread>

#include "chulink/errors.hpp"
#include "chulink/quadrature.hpp"

namespace chulink {

using nlohmann::json;

namespace {

// Runs fn(i) for i in [0, n) across hardware threads. Results must be written
// by index; the exception of the lowest failing index is rethrown so errors
// are reported the same way regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Re-raises an error from a sweep point with the point attached, keeping the
// error category (and so the CLI exit code).
template <typename Fn>
auto at_point(const std::string& variable, double value, Fn&& fn) {
  std::ostringstream os;
  os << "sweep point " << variable << " = " << value << ": ";
  try {
    return fn();
  } catch (const NumericalError& e) {
    throw e.with_context(os.str());
  } catch (const SingularityError& e) {
    throw SingularityError(os.str() + e.what());
  } catch (const GeometryError& e) {
    throw GeometryError(os.str() + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(os.str() + e.what());
  }
}

std::string short_name(RegimeChoice r) {
  switch (r) {
    case RegimeChoice::near_field: return "nf";
    case RegimeChoice::far_field: return "ff";
    case RegimeChoice::automatic: return "auto";
  }
  return "auto";
}

std::string to_string(SweepScale s) { return s == SweepScale::log ? "log" : "linear"; }

SweepScale parse_scale(const std::string& s) {
  if (s == "linear") return SweepScale::linear;
  if (s == "log") return SweepScale::log;
  throw ConfigError("sweep.scale must be 'linear' or 'log', got '" + s + "'");
}

double to_db(double x) { return 10.0 * std::log10(x); }

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return item.key() == k; }) == allowed.end()) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json orientation_json(const OrientationPreset& o) {
  return {{"name", o.name()}, {"beta", o.beta()}, {"gamma", o.gamma()}};
}

OrientationPreset orientation_from(const json& j) {
  if (j.is_string()) return OrientationPreset::parse(j.get<std::string>());
  require_keys(j, "orientation", {"name", "beta", "gamma"});
  const std::string name = j.at("name").get<std::string>();
  if (name != "custom") return OrientationPreset::parse(name);
  return OrientationPreset::custom(j.value("beta", 0.0), j.value("gamma", 0.0));
}

const OrientationPreset* find_orientation(const ExperimentConfig& cfg, OrientationPreset::Tag tag) {
  for (const auto& o : cfg.orientations) {
    if (o.tag() == tag) return &o;
  }
  return nullptr;
}

LinkModel make_link(const ExperimentConfig& cfg, const AntennaSpec& ant, double distance,
                    const OrientationPreset& o, RegimeChoice regime) {
  LinkModel m{ant, ant, o.at_distance(distance), cfg.rf, regime, {}};
  m.validate();
  return m;
}

struct PanelSeries {
  std::string name;
  std::vector<double> values;
};

// Shared driver of rate-size and rate-bandwidth: one rate_uniform column per
// (panel, orientation).
SweepTable run_panels(const ExperimentConfig& cfg,
                      const std::function<Band(double)>& band_at,
                      const std::function<AntennaSpec(double)>& antenna_at) {
  cfg.validate();
  const std::vector<double> xs = cfg.sweep.values();
  const double lambda = cfg.reference_wavelength();
  const std::size_t n_series = cfg.panels.size() * cfg.orientations.size();

  std::vector<std::vector<double>> rates(n_series, std::vector<double>(xs.size()));
  std::vector<double> worst_change(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t i) {
    at_point(cfg.sweep.variable, xs[i], [&] {
      const Band band = band_at(xs[i]);
      const AntennaSpec ant = antenna_at(xs[i]);
      std::size_t s = 0;
      for (const auto& panel : cfg.panels) {
        for (const auto& o : cfg.orientations) {
          const LinkModel link = make_link(cfg, ant, panel.d_over_lambda * lambda, o, panel.regime);
          const RateEstimate r = rate_uniform(band, PowerBudget{cfg.p_max}, link);
          rates[s++][i] = r.bits_per_s;
          worst_change[i] = std::max(worst_change[i], r.relative_change);
        }
      }
      return 0;
    });
  });

  SweepTable t;
  t.add_column(cfg.sweep.variable, xs);
  json panels = json::array();
  std::size_t s = 0;
  for (const auto& panel : cfg.panels) {
    json series = json::object();
    for (const auto& o : cfg.orientations) {
      std::vector<double>& v = rates[s++];
      json info = json::object();
      info["nondecreasing"] = std::is_sorted(v.begin(), v.end());
      if (!v.empty()) {
        const auto best = std::max_element(v.begin(), v.end()) - v.begin();
        info["argmax"] = xs[static_cast<std::size_t>(best)];
        info["max_bits_s"] = v[static_cast<std::size_t>(best)];
      }
      series[o.name()] = info;
      t.add_column(panel_column("rate", o, panel), std::move(v));
    }
    json p = {{"d_over_lambda", panel.d_over_lambda}, {"regime", short_name(panel.regime)},
              {"series", series}};
    const auto* col = find_orientation(cfg, OrientationPreset::Tag::colinear);
    const auto* par = find_orientation(cfg, OrientationPreset::Tag::parallel);
    if (col && par && !xs.empty()) {
      const auto& a = t.column(panel_column("rate", *col, panel));
      const auto& b = t.column(panel_column("rate", *par, panel));
      double max_rel = 0.0;
      bool col_ge = true;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        max_rel = std::max(max_rel, std::abs(a[i] - b[i]) / std::max(a[i], b[i]));
        col_ge = col_ge && a[i] >= b[i];
      }
      p["max_relative_difference"] = max_rel;
      p["colinear_ge_parallel_everywhere"] = col_ge;
    }
    panels.push_back(p);
  }
  const double worst =
      worst_change.empty() ? 0.0 : *std::max_element(worst_change.begin(), worst_change.end());
  t.metadata = {{"config", cfg.to_json()},
                {"summary", {{"panels", panels}, {"max_grid_relative_change", worst}}}};
  return t;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw ShapeError("read_csv: unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ShapeError("read_csv: not a number: '" + s + "'");
  }
  if (used != s.size()) throw ShapeError("read_csv: not a number: '" + s + "'");
  return v;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::snr_distance: return "snr-distance";
    case Experiment::rate_size: return "rate-size";
    case Experiment::rate_bandwidth: return "rate-bandwidth";
    case Experiment::opa_compare: return "opa-compare";
    case Experiment::point: return "point";
  }
  return "point";
}

Experiment parse_experiment(const std::string& s) {
  for (auto e : {Experiment::snr_distance, Experiment::rate_size, Experiment::rate_bandwidth,
                 Experiment::opa_compare, Experiment::point}) {
    if (s == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment '" + s + "'");
}

std::vector<double> SweepSpec::values() const {
  if (points == 0) return {};
  if (points == 1) return {lo};
  if (scale == SweepScale::linear) return quadrature::linspace(lo, hi, points);
  std::vector<double> v = quadrature::linspace(std::log(lo), std::log(hi), points);
  for (double& x : v) x = std::exp(x);
  v.front() = lo;
  v.back() = hi;
  return v;
}

ExperimentConfig ExperimentConfig::defaults(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  c.orientations = {OrientationPreset::colinear(), OrientationPreset::parallel()};
  switch (e) {
    case Experiment::snr_distance:
      c.f_c = 1e9;
      c.sweep = {"d_over_lambda", 0.1, 2.0, 201, SweepScale::linear};
      break;
    case Experiment::rate_size:
      c.f_c = 25e9;
      c.sweep = {"a_over_lambda", 0.02, 0.07, 201, SweepScale::linear};
      c.panels = {{0.15, RegimeChoice::near_field},
                  {0.45, RegimeChoice::near_field},
                  {2.0, RegimeChoice::far_field}};
      break;
    case Experiment::rate_bandwidth:
      c.p_max = 0.1e-3;
      c.f_min = 5e9;
      c.sweep = {"bandwidth_ratio", 1.5, 100.0, 201, SweepScale::log};
      c.panels = {{0.1, RegimeChoice::near_field},
                  {0.3, RegimeChoice::near_field},
                  {0.5, RegimeChoice::far_field}};
      break;
    case Experiment::opa_compare:
      c.f_c = 25e9;
      c.regime = RegimeChoice::near_field;
      c.sweep = {"d_over_lambda", 0.1, 0.5, 201, SweepScale::linear};
      break;
    case Experiment::point:
      c.f_c = 1e9;
      c.orientations = {OrientationPreset::colinear()};
      c.sweep = {"", 0.0, 0.0, 0, SweepScale::linear};
      break;
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  try {
    require_keys(j, "config", {"experiment", "antenna", "rf", "orientations", "regime", "band",
                               "budget", "sweep", "panels", "point", "snr"});
    if (!j.contains("experiment")) throw ConfigError("config: missing 'experiment'");
    ExperimentConfig c = defaults(parse_experiment(j.at("experiment").get<std::string>()));

    if (j.contains("antenna")) {
      const json& a = j.at("antenna");
      require_keys(a, "antenna", {"lambda_over_a", "ladder_R"});
      read_if(a, "lambda_over_a", c.lambda_over_a);
      read_if(a, "ladder_R", c.ladder_R);
    }
    if (j.contains("rf")) {
      const json& r = j.at("rf");
      require_keys(r, "rf", {"generator_R", "lna_Rin", "lna_gain_beta", "noise_figure",
                             "noise_figure_db", "temperature_K"});
      read_if(r, "generator_R", c.rf.generator_R);
      read_if(r, "lna_Rin", c.rf.lna_Rin);
      read_if(r, "lna_gain_beta", c.rf.lna_gain_beta);
      read_if(r, "temperature_K", c.rf.temperature_T);
      if (r.contains("noise_figure") && r.contains("noise_figure_db")) {
        throw ConfigError("rf: give noise_figure or noise_figure_db, not both");
      }
      read_if(r, "noise_figure", c.rf.noise_figure_Nf);
      if (r.contains("noise_figure_db")) {
        c.rf.noise_figure_Nf = std::pow(10.0, r.at("noise_figure_db").get<double>() / 10.0);
      }
    }
    if (j.contains("orientations")) {
      const json& o = j.at("orientations");
      if (!o.is_array()) throw ConfigError("orientations must be an array");
      c.orientations.clear();
      for (const auto& item : o) c.orientations.push_back(orientation_from(item));
    }
    if (j.contains("regime")) c.regime = parse_regime(j.at("regime").get<std::string>());
    if (j.contains("band")) {
      const json& b = j.at("band");
      require_keys(b, "band", {"f_c", "fractional_width", "f_min", "grid_points"});
      read_if(b, "f_c", c.f_c);
      read_if(b, "fractional_width", c.fractional_width);
      read_if(b, "f_min", c.f_min);
      read_if(b, "grid_points", c.grid_points);
    }
    if (j.contains("budget")) {
      require_keys(j.at("budget"), "budget", {"p_max_W"});
      read_if(j.at("budget"), "p_max_W", c.p_max);
    }
    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      require_keys(s, "sweep", {"variable", "lo", "hi", "points", "scale"});
      read_if(s, "variable", c.sweep.variable);
      read_if(s, "lo", c.sweep.lo);
      read_if(s, "hi", c.sweep.hi);
      read_if(s, "points", c.sweep.points);
      if (s.contains("scale")) c.sweep.scale = parse_scale(s.at("scale").get<std::string>());
    }
    if (j.contains("panels")) {
      const json& p = j.at("panels");
      if (!p.is_array()) throw ConfigError("panels must be an array");
      c.panels.clear();
      for (const auto& item : p) {
        require_keys(item, "panel", {"d_over_lambda", "regime"});
        c.panels.push_back({item.at("d_over_lambda").get<double>(),
                            parse_regime(item.value("regime", std::string("auto")))});
      }
    }
    if (j.contains("point")) {
      require_keys(j.at("point"), "point", {"d_over_lambda"});
      read_if(j.at("point"), "d_over_lambda", c.d_over_lambda);
    }
    if (j.contains("snr")) {
      require_keys(j.at("snr"), "snr", {"ff_column", "peak_normalization"});
      read_if(j.at("snr"), "ff_column", c.ff_column);
      read_if(j.at("snr"), "peak_normalization", c.peak_normalization);
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return from_json(j);
}

json ExperimentConfig::to_json() const {
  json orient = json::array();
  for (const auto& o : orientations) orient.push_back(orientation_json(o));
  json panel_list = json::array();
  for (const auto& p : panels) {
    panel_list.push_back({{"d_over_lambda", p.d_over_lambda}, {"regime", short_name(p.regime)}});
  }
  return {
      {"experiment", to_string(experiment)},
      {"antenna", {{"lambda_over_a", lambda_over_a}, {"ladder_R", ladder_R}}},
      {"rf",
       {{"generator_R", rf.generator_R},
        {"lna_Rin", rf.lna_Rin},
        {"lna_gain_beta", rf.lna_gain_beta},
        {"noise_figure", rf.noise_figure_Nf},
        {"temperature_K", rf.temperature_T}}},
      {"orientations", orient},
      {"regime", short_name(regime)},
      {"band",
       {{"f_c", f_c}, {"fractional_width", fractional_width}, {"f_min", f_min},
        {"grid_points", grid_points}}},
      {"budget", {{"p_max_W", p_max}}},
      {"sweep",
       {{"variable", sweep.variable}, {"lo", sweep.lo}, {"hi", sweep.hi},
        {"points", sweep.points}, {"scale", to_string(sweep.scale)}}},
      {"panels", panel_list},
      {"point", {{"d_over_lambda", d_over_lambda}}},
      {"snr", {{"ff_column", ff_column}, {"peak_normalization", peak_normalization}}},
  };
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError("config: " + m); };
  if (!(lambda_over_a > 0.0)) fail("antenna.lambda_over_a must be positive");
  if (!(ladder_R > 0.0)) fail("antenna.ladder_R must be positive");
  try {
    rf.validate();
    PowerBudget{p_max}.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (orientations.empty()) fail("at least one orientation is required");
  if (!(f_c > 0.0) || !(f_min > 0.0)) fail("band frequencies must be positive");
  if (!(fractional_width > 0.0 && fractional_width < 2.0)) {
    fail("band.fractional_width must lie in (0, 2)");
  }
  if (grid_points < 3 || grid_points % 2 == 0) fail("band.grid_points must be odd and >= 3");

  const char* expected = "";
  switch (experiment) {
    case Experiment::snr_distance:
    case Experiment::opa_compare: expected = "d_over_lambda"; break;
    case Experiment::rate_size: expected = "a_over_lambda"; break;
    case Experiment::rate_bandwidth: expected = "bandwidth_ratio"; break;
    case Experiment::point: expected = ""; break;
  }
  if (sweep.variable != expected) {
    fail("experiment " + to_string(experiment) + " sweeps '" + expected + "', not '" +
         sweep.variable + "'");
  }
  if (experiment == Experiment::point) {
    if (!(d_over_lambda > 0.0)) fail("point.d_over_lambda must be positive");
  } else if (sweep.points > 0) {
    if (!std::isfinite(sweep.lo) || !std::isfinite(sweep.hi)) fail("sweep range must be finite");
    if (sweep.points > 1 && !(sweep.hi > sweep.lo)) fail("sweep.hi must exceed sweep.lo");
    if (!(sweep.lo > 0.0)) fail("sweep.lo must be positive");
    if (experiment == Experiment::rate_bandwidth && !(sweep.lo > 1.0)) {
      fail("bandwidth_ratio must exceed 1");
    }
  }
  if (experiment == Experiment::rate_size || experiment == Experiment::rate_bandwidth) {
    if (panels.empty()) fail("at least one distance panel is required");
    for (const auto& p : panels) {
      if (!(p.d_over_lambda > 0.0)) fail("panel d_over_lambda must be positive");
    }
  }
}

double ExperimentConfig::reference_frequency() const {
  return experiment == Experiment::rate_bandwidth ? f_min : f_c;
}

double ExperimentConfig::reference_wavelength() const {
  return wavelength(reference_frequency());
}

Band ExperimentConfig::band() const {
  return Band::centered(f_c, fractional_width * f_c, grid_points);
}

AntennaSpec ExperimentConfig::antenna() const {
  return AntennaSpec{reference_wavelength() / lambda_over_a, ladder_R};
}

void SweepTable::add_column(std::string name, std::vector<double> values) {
  if (has_column(name)) throw ShapeError("SweepTable: duplicate column '" + name + "'");
  if (!columns.empty() && values.size() != rows()) {
    throw ShapeError("SweepTable: column '" + name + "' has the wrong length");
  }
  names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

const std::vector<double>& SweepTable::column(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ShapeError("SweepTable: no column '" + name + "'");
  return columns[static_cast<std::size_t>(it - names.begin())];
}

bool SweepTable::has_column(const std::string& name) const {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::size_t SweepTable::rows() const { return columns.empty() ? 0 : columns.front().size(); }

void SweepTable::validate() const {
  if (names.size() != columns.size()) throw ShapeError("SweepTable: names and columns differ");
  for (const auto& c : columns) {
    if (c.size() != rows()) throw ShapeError("SweepTable: ragged columns");
  }
}

std::string panel_column(const std::string& prefix, const OrientationPreset& o,
                         const DistancePanel& p) {
  std::ostringstream os;
  os << prefix << '_' << o.name() << "_d" << p.d_over_lambda << '_' << short_name(p.regime);
  return os.str();
}

bool locate_crossover(const std::vector<double>& x, const std::vector<double>& diff,
                      double* where) {
  if (x.size() != diff.size()) throw ShapeError("locate_crossover: length mismatch");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (diff[i - 1] > 0.0 && diff[i] <= 0.0) {
      const double t = diff[i - 1] / (diff[i - 1] - diff[i]);
      *where = x[i - 1] + t * (x[i] - x[i - 1]);
      return true;
    }
  }
  return false;
}

SweepTable run_snr_vs_distance(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> xs = cfg.sweep.values();
  const double lambda = cfg.reference_wavelength();
  const AntennaSpec ant = cfg.antenna();
  const Band band = cfg.band();
  const double psd = cfg.p_max / band.width();
  const std::vector<double> freqs = cfg.peak_normalization ? band.grid() : std::vector<double>{};
  const std::size_t n_o = cfg.orientations.size();
  const std::size_t n_series = n_o + (cfg.ff_column ? 1 : 0);

  std::vector<std::vector<double>> snr(n_series, std::vector<double>(xs.size()));
  std::vector<std::vector<double>> peak_axis(n_series, std::vector<double>(xs.size()));
  parallel_for(xs.size(), [&](std::size_t i) {
    at_point(cfg.sweep.variable, xs[i], [&] {
      const double d = xs[i] * lambda;
      for (std::size_t s = 0; s < n_series; ++s) {
        const bool ff = s == n_o;
        const OrientationPreset& o = ff ? cfg.orientations.front() : cfg.orientations[s];
        const LinkModel link =
            make_link(cfg, ant, d, o, ff ? RegimeChoice::far_field : cfg.regime);
        if (!cfg.peak_normalization) {
          snr[s][i] = to_db(link.evaluate(cfg.f_c, psd).snr);
          continue;
        }
        double best = -1.0;
        double f_best = cfg.f_c;
        for (double f : freqs) {
          const double v = link.evaluate(f, psd).snr;
          if (v > best) {
            best = v;
            f_best = f;
          }
        }
        snr[s][i] = to_db(best);
        peak_axis[s][i] = d / wavelength(f_best);
      }
      return 0;
    });
  });

  SweepTable t;
  t.add_column(cfg.sweep.variable, xs);
  for (std::size_t s = 0; s < n_series; ++s) {
    const std::string name = s == n_o ? "ff" : cfg.orientations[s].name();
    t.add_column("snr_" + name + "_db", snr[s]);
    if (cfg.peak_normalization) t.add_column("d_over_lambda_peak_" + name, peak_axis[s]);
  }

  json summary = {{"normalization", cfg.peak_normalization ? "peak" : "f_c"},
                  {"crossover_d_over_lambda", nullptr}};
  const auto* col = find_orientation(cfg, OrientationPreset::Tag::colinear);
  const auto* par = find_orientation(cfg, OrientationPreset::Tag::parallel);
  if (col && par) {
    const auto& a = t.column("snr_" + col->name() + "_db");
    const auto& b = t.column("snr_" + par->name() + "_db");
    std::vector<double> diff(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) diff[i] = a[i] - b[i];
    double where = 0.0;
    if (locate_crossover(xs, diff, &where)) summary["crossover_d_over_lambda"] = where;
    t.add_column("snr_diff_db", std::move(diff));
  }
  t.metadata = {{"config", cfg.to_json()}, {"summary", summary}};
  return t;
}

SweepTable run_rate_vs_size(const ExperimentConfig& cfg) {
  const double lambda = cfg.reference_wavelength();
  const Band band = cfg.band();
  return run_panels(
      cfg, [&](double) { return band; },
      [&](double a_over_lambda) { return AntennaSpec{a_over_lambda * lambda, cfg.ladder_R}; });
}

SweepTable run_rate_vs_bandwidth(const ExperimentConfig& cfg) {
  const AntennaSpec ant = cfg.antenna();
  return run_panels(
      cfg, [&](double ratio) { return Band{cfg.f_min, ratio * cfg.f_min, cfg.grid_points}; },
      [&](double) { return ant; });
}

SweepTable run_opa_comparison(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> xs = cfg.sweep.values();
  const double lambda = cfg.reference_wavelength();
  const AntennaSpec ant = cfg.antenna();
  const Band band = cfg.band();
  const std::size_t n_o = cfg.orientations.size();

  std::vector<std::vector<double>> uni(n_o, std::vector<double>(xs.size()));
  std::vector<std::vector<double>> opa(n_o, std::vector<double>(xs.size()));
  std::vector<double> worst_change(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t i) {
    at_point(cfg.sweep.variable, xs[i], [&] {
      for (std::size_t s = 0; s < n_o; ++s) {
        const LinkModel link = make_link(cfg, ant, xs[i] * lambda, cfg.orientations[s], cfg.regime);
        const RateEstimate u = rate_uniform(band, PowerBudget{cfg.p_max}, link);
        const RateEstimate o = rate_opa(band, PowerBudget{cfg.p_max}, link);
        uni[s][i] = u.bits_per_s;
        opa[s][i] = o.bits_per_s;
        worst_change[i] = std::max({worst_change[i], u.relative_change, o.relative_change});
      }
      return 0;
    });
  });

  SweepTable t;
  t.add_column(cfg.sweep.variable, xs);
  json max_gain = json::object();
  for (std::size_t s = 0; s < n_o; ++s) {
    const std::string name = cfg.orientations[s].name();
    std::vector<double> gain(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) gain[i] = opa[s][i] / uni[s][i];
    if (!gain.empty()) {
      const auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
      max_gain[name] = {{"gain", gain[best]}, {"at", xs[best]}};
    }
    t.add_column("rate_uniform_" + name, std::move(uni[s]));
    t.add_column("rate_opa_" + name, std::move(opa[s]));
    t.add_column("gain_" + name, std::move(gain));
  }
  const double worst =
      worst_change.empty() ? 0.0 : *std::max_element(worst_change.begin(), worst_change.end());
  t.metadata = {{"config", cfg.to_json()},
                {"summary", {{"max_gain", max_gain}, {"max_grid_relative_change", worst}}}};
  return t;
}

SweepTable run_point(const ExperimentConfig& cfg) {
  cfg.validate();
  const Band band = cfg.band();
  const LinkModel link = make_link(cfg, cfg.antenna(), cfg.d_over_lambda * cfg.reference_wavelength(),
                                   cfg.orientations.front(), cfg.regime);
  const TwoPortZ z = link.two_port(cfg.f_c);
  const LinkPoint p = link.evaluate(cfg.f_c, cfg.p_max / band.width());
  const RateEstimate u = rate_uniform(band, PowerBudget{cfg.p_max}, link);
  const RateEstimate o = rate_opa(band, PowerBudget{cfg.p_max}, link);

  SweepTable t;
  auto add = [&t](const char* name, double v) { t.add_column(name, {v}); };
  add("f_hz", cfg.f_c);
  add("d_over_lambda", z.d_over_lambda);
  add("z_t_re", z.z_t.re());
  add("z_t_im", z.z_t.im());
  add("z_r_re", z.z_r.re());
  add("z_r_im", z.z_r.im());
  add("z_rt_re", z.z_rt.re());
  add("z_rt_im", z.z_rt.im());
  add("z_tr_re", z.z_tr.re());
  add("z_tr_im", z.z_tr.im());
  add("h_gain_sq", p.h_gain_sq);
  add("noise_psd", p.noise_psd);
  add("snr_db", to_db(p.snr));
  add("rate_uniform", u.bits_per_s);
  add("rate_opa", o.bits_per_s);
  t.metadata = {{"config", cfg.to_json()},
                {"summary",
                 {{"orientation", cfg.orientations.front().name()},
                  {"regime", to_string(z.regime)},
                  {"max_grid_relative_change", std::max(u.relative_change, o.relative_change)}}}};
  return t;
}

SweepTable run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::snr_distance: return run_snr_vs_distance(cfg);
    case Experiment::rate_size: return run_rate_vs_size(cfg);
    case Experiment::rate_bandwidth: return run_rate_vs_bandwidth(cfg);
    case Experiment::opa_compare: return run_opa_comparison(cfg);
    case Experiment::point: return run_point(cfg);
  }
  throw ConfigError("unknown experiment");
}

void emit_csv(const SweepTable& table, std::ostream& out) {
  table.validate();
  std::istringstream meta(table.metadata.dump(2));
  for (std::string line; std::getline(meta, line);) out << "# " << line << '\n';
  for (std::size_t c = 0; c < table.names.size(); ++c) {
    out << (c ? "," : "") << csv_field(table.names[c]);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << format_number(table.columns[c][r]);
    }
    out << '\n';
  }
}

void emit_csv(const SweepTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(table, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

SweepTable read_csv(std::istream& in) {
  SweepTable t;
  std::string meta;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && !line.empty() && line.front() == '#') {
      meta += line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1);
      meta += '\n';
      continue;
    }
    if (!have_header) {
      for (auto& name : split_csv_row(line)) t.add_column(std::move(name), {});
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != t.names.size()) throw ShapeError("read_csv: row width differs from header");
    for (std::size_t c = 0; c < fields.size(); ++c) t.columns[c].push_back(parse_number(fields[c]));
  }
  if (!have_header) throw ShapeError("read_csv: missing header row");
  if (!meta.empty()) {
    try {
      t.metadata = json::parse(meta);
    } catch (const json::exception& e) {
      throw ShapeError(std::string("read_csv: bad metadata block: ") + e.what());
    }
  }
  return t;
}

SweepTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_csv(in);
}

}  // namespace chulink
