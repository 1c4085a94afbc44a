// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Run with criterion numbers as arguments to select a subset.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chulink/em_core.hpp"
#include "chulink/errors.hpp"
#include "chulink/quadrature.hpp"
#include "chulink/sweep.hpp"
#include "oracles.hpp"

using namespace chulink;
using oracle::rel_err;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <typename... Args>
std::string fmtn(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Closed-form mutual impedance vs the field-projection oracle.
Verdict ac01() {
  const auto t0 = Clock::now();
  const double f = 1e9;
  const double lam = wavelength(f);
  const double r_t = 0.05, r_r = 0.08;
  const double dl_t = oracle::dipole_length(r_t, f), dl_r = oracle::dipole_length(r_r, f);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ud(0.05, 5.0), ua(0.0, 2 * constants::pi);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const LinkGeometry g{ud(rng) * lam, ua(rng), ua(rng)};
    const cplx z = hertz_mutual_impedance(f, g, r_t, r_r).value();
    // The closed form carries the opposite receive-port polarity to the
    // induced-EMF projection; compare against -V/I.
    const cplx lib = oc_voltage_projection(f, g, 1.0, dl_t, dl_r);
    const cplx ind = oracle::projection_impedance(f, g.distance_d, g.beta, g.gamma, r_t, r_r);
    worst = std::max({worst, rel_err(-z, lib), rel_err(-z, ind)});
  }
  const double t = seconds_since(t0);
  return {worst < 1e-10 && t < 1.0, fmtn("max rel err %.2e (< 1e-10), %.3f s (< 1 s)", worst, t)};
}

// 2. Poynting integral vs closed forms at two radii.
Verdict ac02() {
  const auto t0 = Clock::now();
  const double f = 2.4e9;
  const double lam = wavelength(f);
  const double current = 0.5;
  const double r_rad = hertz_radiation_resistance(lam / 120, f);
  const ModeCoefficient a1 = tm1_coefficient(current, f, r_rad);
  const double k = wavenumber(f);
  const double closed = (4 * constants::pi / 3) * (constants::eta() / (k * k)) * std::norm(a1.a1);
  const double circuit = 0.5 * current * current * r_rad;
  double worst = 0.0;
  for (double r : {lam / 20, 2 * lam}) {
    const double p = radiated_power_sphere(a1, f, r);
    worst = std::max({worst, rel_err(p, closed), rel_err(p, circuit)});
  }
  const double t = seconds_since(t0);
  return {worst < 1e-6 && t < 1.0, fmtn("max rel err %.2e (< 1e-6), %.3f s (< 1 s)", worst, t)};
}

// 3. |Z_FF| equals the 1/(k0 d) term of the parallel near-field form.
Verdict ac03() {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double f = std::pow(10.0, 8.0 + 3.0 * u(rng));
    const double d = std::pow(10.0, -2.0 + 3.0 * u(rng));
    const AntennaSpec at{std::pow(10.0, -4.0 + 2.0 * u(rng)), 1.0 + 500.0 * u(rng)};
    const AntennaSpec ar{std::pow(10.0, -4.0 + 2.0 * u(rng)), 1.0 + 500.0 * u(rng)};
    const double ff = std::abs(chu_ff_mutual_impedance(f, d, at, ar).value());
    const double rt = chu_self_impedance(f, at).re(), rr = chu_self_impedance(f, ar).re();
    const OrientationPreset par = OrientationPreset::parallel();
    const cplx u1 = cplx(0.0, wavenumber(f) * d);
    const cplx lead = -3.0 * std::sqrt(rt * rr) * 0.5 * std::sin(par.beta()) * std::sin(par.gamma()) / u1;
    worst = std::max(worst, rel_err(ff, std::abs(lead)));
  }
  return {worst < 1e-9, fmt("max rel err %.2e over 1000 draws (< 1e-9)", worst)};
}

// 4. Reciprocity and the orthogonality null.
Verdict ac04() {
  const double f = 5e9;
  const double lam = wavelength(f);
  const AntennaSpec at{lam / 20, 50.0}, ar{lam / 30, 75.0};
  const ComplexOhm zt = chu_self_impedance(f, at), zr = chu_self_impedance(f, ar);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ud(0.1, 5.0), ua(0.0, 2 * constants::pi);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LinkGeometry g{ud(rng) * lam, ua(rng), ua(rng)};
    const cplx a = chu_nf_mutual_impedance(f, g, zt, zr).value();
    const cplx b = chu_nf_mutual_impedance(f, {g.distance_d, g.gamma, g.beta}, zr, zt).value();
    worst = std::max(worst, rel_err(b, a));
  }
  const ComplexOhm null = chu_nf_mutual_impedance(f, {0.3 * lam, constants::pi / 2, 0.0}, zt, zr);
  const bool exact_null = null.re() == 0.0 && null.im() == 0.0;
  return {worst <= 2.3e-16 && exact_null,
          fmtn("swap rel err %.2e (machine precision), null |Z| = %.1e (exactly 0)", worst,
               std::abs(null.value()))};
}

// 5. Closed-form noise PSD vs covariance propagation, both regimes.
Verdict ac05() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0), ua(0.0, 2 * constants::pi);
  double worst[2] = {0.0, 0.0};
  for (int i = 0; i < 500; ++i) {
    const double f = std::pow(10.0, 8.0 + 3.0 * u(rng));
    const double lam = wavelength(f);
    const AntennaSpec at{lam * (0.01 + 0.1 * u(rng)), 5.0 + 200.0 * u(rng)};
    const AntennaSpec ar{lam * (0.01 + 0.1 * u(rng)), 5.0 + 200.0 * u(rng)};
    const double d = (at.radius_a + ar.radius_a) * (1.0 + 50.0 * u(rng));
    const RfChain rf{1.0 + 200.0 * u(rng), 1.0 + 200.0 * u(rng), 0.1 + 50.0 * u(rng), 1.0 + 10.0 * u(rng),
                     50.0 + 400.0 * u(rng)};
    for (int r = 0; r < 2; ++r) {
      const TwoPortZ z = assemble_two_port(f, at, ar, {d, ua(rng), ua(rng)},
                                           r == 0 ? RegimeChoice::near_field : RegimeChoice::far_field);
      const double ref = oracle::noise_by_propagation(
          z.z_t.value(), z.z_r.value(), z.z_rt.value(), z.z_tr.value(), r == 0,
          {rf.generator_R, rf.lna_Rin, rf.lna_gain_beta, rf.noise_figure_Nf, rf.temperature_T});
      worst[r] = std::max(worst[r], rel_err(noise_psd(z, rf), ref));
    }
  }
  return {worst[0] < 1e-12 && worst[1] < 1e-12,
          fmtn("max rel err NF %.2e, FF %.2e (< 1e-12)", worst[0], worst[1])};
}

// 6. Water-filling oracles and dominance.
Verdict ac06() {
  const Band band = Band::centered(25e9, 5e9);
  bool ok = true;

  const double g = 4e-9;
  const auto flat = waterfill(band, {1e-2}, {band.grid(), std::vector<double>(band.grid_points, g)});
  const double uni_flat = rate_uniform(band, {1e-2}, [g](double) { return g; }).bits_per_s;
  const double flat_err = rel_err(flat.rate_bits_s, uni_flat);
  ok = ok && flat_err < 1e-9;

  double kkt_err = 0.0;
  for (double g2 : {1e13, 1e11}) {
    const double w = 1e9, g1 = 4e13, pmax = 1e-3;
    const auto ref = oracle::two_channel_kkt(w, g1, w, g2, pmax);
    const auto grid = oracle::two_channel_grid(w, g1, w, g2, pmax, 100000);
    const auto s = waterfill_weighted(std::vector<double>{w, w}, std::vector<double>{g1, g2}, pmax);
    kkt_err = std::max({kkt_err, rel_err(s.pt_star.values[0], ref.p1),
                        std::abs(s.pt_star.values[1] - ref.p2) / ref.p1, rel_err(s.rate_bits_s, ref.rate)});
    ok = ok && grid.rate <= ref.rate * (1 + 1e-12);
  }
  ok = ok && kkt_err < 1e-9;

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double power_err = 0.0;
  int dominated = 0;
  const auto weights = quadrature::simpson_weights(band.grid_points, band.f_lo, band.f_hi);
  for (int i = 0; i < 50; ++i) {
    const double lam = wavelength(band.center());
    const AntennaSpec at{lam * (0.02 + 0.05 * u(rng)), 10.0 + 90.0 * u(rng)};
    const AntennaSpec ar{lam * (0.02 + 0.05 * u(rng)), 10.0 + 90.0 * u(rng)};
    const double d = 1.2 * (at.radius_a + ar.radius_a) + 5.0 * lam * u(rng);
    const LinkModel link{at, ar, {d, 2 * constants::pi * u(rng), 2 * constants::pi * u(rng)},
                         RfChain{10.0 + 90.0 * u(rng), 10.0 + 90.0 * u(rng), 1.0 + 20.0 * u(rng), 1.0 + 3.0 * u(rng), 300.0},
                         u(rng) < 0.5 ? RegimeChoice::near_field : RegimeChoice::far_field, {}};
    const PowerBudget p{std::pow(10.0, -12.0 + 10.0 * u(rng))};
    if (rate_opa(band, p, link).bits_per_s >= rate_uniform(band, p, link).bits_per_s * (1 - 1e-9)) ++dominated;
    const auto s = waterfill(band, p, gamma_curve(link, band.grid()));
    double power = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) power += weights[k] * s.pt_star.values[k];
    power_err = std::max(power_err, rel_err(power, p.p_max));
  }
  ok = ok && dominated == 50 && power_err < 1e-6;
  return {ok, fmtn("flat %.1e, KKT %.1e (< 1e-9); power %.1e (< 1e-6); OPA >= uniform %d/50", flat_err,
                   kkt_err, power_err, dominated)};
}

// 7. Colinear/parallel SNR crossover.
Verdict ac07() {
  const auto t0 = Clock::now();
  const SweepTable t = run_snr_vs_distance(ExperimentConfig::defaults(Experiment::snr_distance));
  const double secs = seconds_since(t0);
  const auto& x = t.metadata["summary"]["crossover_d_over_lambda"];
  if (!x.is_number()) return {false, "no crossover found"};
  const double c = x.get<double>();
  return {c >= 0.31 && c <= 0.45 && secs < 5.0,
          fmtn("crossover d/λ = %.4f (in [0.31, 0.45]), %.2f s (< 5 s)", c, secs)};
}

// 8. Far-field formula within 1 dB of the exact SNR from 0.5λ on.
Verdict ac08() {
  ExperimentConfig c = ExperimentConfig::defaults(Experiment::snr_distance);
  c.orientations = {OrientationPreset::parallel()};
  c.sweep = {"d_over_lambda", 0.5, 100.0, 801, SweepScale::log};
  const SweepTable t = run_snr_vs_distance(c);
  const auto& nf = t.column("snr_parallel_db");
  const auto& ff = t.column("snr_ff_db");
  double worst = 0.0;
  for (std::size_t i = 0; i < nf.size(); ++i) worst = std::max(worst, std::abs(nf[i] - ff[i]));
  return {worst < 1.0, fmt("max |SNR_NF - SNR_FF| = %.3f dB over d/λ in [0.5, 100] (< 1 dB)", worst)};
}

// 9. Regime ordering of the uniform-power rate.
Verdict ac09() {
  const ExperimentConfig c = ExperimentConfig::defaults(Experiment::rate_size);
  const SweepTable t = run_rate_vs_size(c);
  const auto col = OrientationPreset::colinear(), par = OrientationPreset::parallel();
  auto column = [&](const OrientationPreset& o, std::size_t p) -> const std::vector<double>& {
    return t.column(panel_column("rate", o, c.panels[p]));
  };
  bool reactive = true, radiative = true;
  double far_gap = 0.0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    reactive = reactive && column(col, 0)[i] > column(par, 0)[i];
    radiative = radiative && column(par, 1)[i] >= column(col, 1)[i];
    far_gap = std::max(far_gap, std::abs(column(col, 2)[i] - column(par, 2)[i]) / column(par, 2)[i]);
  }
  return {reactive && radiative && far_gap < 0.01,
          fmtn("0.15λ colinear > parallel: %s; 0.45λ parallel >= colinear: %s; 2λ (far-field model) gap %.2e "
               "(< 1%%); all a/λ in [0.02, 0.07]",
               reactive ? "yes" : "no", radiative ? "yes" : "no", far_gap)};
}

// Largest γ_max/γ_mean over the Fig. 11 band across a scan of RF chains:
// the low-SNR limit of the OPA/uniform ratio.
struct Bound {
  double ratio = 0.0;
  std::string where;
};

Bound low_snr_bound(const ExperimentConfig& base, const OrientationPreset& o, RegimeChoice regime,
                    const std::vector<double>& distances) {
  Bound best;
  Band band = base.band();
  band.grid_points = 401;
  const auto freqs = band.grid();
  const auto w = quadrature::simpson_weights(band.grid_points, band.f_lo, band.f_hi);
  const double lam = base.reference_wavelength();
  for (double r : {0.1, 1.0, 10.0, 50.0, 200.0, 1e3, 1e4}) {
    for (double rin : {0.1, 1.0, 10.0, 50.0, 200.0, 1e3, 1e4}) {
      for (double rl : {1.0, 50.0, 1e3}) {
        for (double beta : {1e-3, 10.0}) {
          for (double size : {20.0, 25.0}) {
            for (double dl : distances) {
              const LinkModel link{{lam / size, rl}, {lam / size, rl}, o.at_distance(dl * lam),
                                   RfChain{r, rin, beta, base.rf.noise_figure_Nf, 300.0}, regime, {}};
              double mean = 0.0, peak = 0.0;
              for (std::size_t k = 0; k < freqs.size(); ++k) {
                const double g = link.gamma(freqs[k]);
                mean += w[k] * g;
                peak = std::max(peak, g);
              }
              const double ratio = peak / (mean / band.width());
              if (ratio > best.ratio) {
                best.ratio = ratio;
                best.where = fmtn("R=%g Rin=%g Rl=%g beta=%g λ/a=%g d/λ=%g", r, rin, rl, beta, size, dl);
              }
            }
          }
        }
      }
    }
  }
  return best;
}

// 10. OPA gains (configuration-sensitive).
Verdict ac10() {
  const ExperimentConfig nf = ExperimentConfig::defaults(Experiment::opa_compare);
  ExperimentConfig ff = nf;
  ff.regime = RegimeChoice::far_field;
  ff.sweep = {"d_over_lambda", 0.5, 5.0, 201, SweepScale::linear};

  auto max_gain = [](const SweepTable& t) {
    double g = 0.0;
    for (const auto& item : t.metadata["summary"]["max_gain"]) g = std::max(g, item["gain"].get<double>());
    return g;
  };
  const double g_nf = max_gain(run_opa_comparison(nf));
  const double g_ff = max_gain(run_opa_comparison(ff));
  const bool pass = g_nf >= 1.4 && g_ff >= 3.0;
  std::string detail = fmtn("max OPA/uniform NF %.4f (need >= 1.4), FF %.4f (need >= 3.0)", g_nf, g_ff);
  if (pass) return {true, detail};

  // Re-calibration: how large can the ratio get for any RF chain?
  const std::vector<double> nf_d{0.1, 0.2, 0.3, 0.4, 0.5}, ff_d{0.5, 1.0, 2.0, 3.5, 5.0};
  const Bound bc = low_snr_bound(nf, OrientationPreset::colinear(), RegimeChoice::near_field, nf_d);
  const Bound bp = low_snr_bound(nf, OrientationPreset::parallel(), RegimeChoice::near_field, nf_d);
  const Bound bf = low_snr_bound(nf, OrientationPreset::parallel(), RegimeChoice::far_field, ff_d);
  detail += fmtn("\n      recalibration scan (2058 chains/sweep): low-SNR limit gamma_max/gamma_mean <= "
                 "%.3f NF colinear [%s], %.3f NF parallel [%s], %.3f FF [%s]",
                 bc.ratio, bc.where.c_str(), bp.ratio, bp.where.c_str(), bf.ratio, bf.where.c_str());
  detail += fmtn("\n      FF target 3.0 exceeds every scanned bound; NF target 1.4 %s; default chain kept",
                 std::max(bc.ratio, bp.ratio) >= 1.4 ? "reachable only with the chain above" : "also unreachable");
  return {false, detail};
}

// 11. Bandwidth-ratio behaviour.
Verdict ac11() {
  ExperimentConfig c = ExperimentConfig::defaults(Experiment::rate_bandwidth);
  c.panels = {{0.1, RegimeChoice::near_field}, {0.5, RegimeChoice::far_field}};
  const SweepTable t = run_rate_vs_bandwidth(c);
  const auto& x = t.column("bandwidth_ratio");
  const auto col = OrientationPreset::colinear(), par = OrientationPreset::parallel();
  const auto& c0 = t.column(panel_column("rate", col, c.panels[0]));
  const auto& p0 = t.column(panel_column("rate", par, c.panels[0]));
  const auto& c1 = t.column(panel_column("rate", col, c.panels[1]));
  const auto& p1 = t.column(panel_column("rate", par, c.panels[1]));
  double lead_until = 0.0;
  for (std::size_t i = 0; i < x.size() && c0[i] > p0[i]; ++i) lead_until = x[i];
  double gap = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) gap = std::max(gap, std::abs(c1[i] - p1[i]) / p1[i]);
  return {lead_until >= 6.0 && gap < 0.01,
          fmtn("0.1λ colinear leads up to f_max/f_min = %.2f (>= 6); 0.5λ (far-field model) gap %.2e (< 1%%)",
               lead_until, gap)};
}

// 12. Convergence of every rate integral and suite runtime.
Verdict ac12() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::vector<ExperimentConfig> suite;
  for (auto e : {Experiment::snr_distance, Experiment::rate_size, Experiment::rate_bandwidth,
                 Experiment::opa_compare, Experiment::point}) {
    suite.push_back(ExperimentConfig::defaults(e));
  }
  ExperimentConfig ff = ExperimentConfig::defaults(Experiment::opa_compare);
  ff.regime = RegimeChoice::far_field;
  ff.sweep = {"d_over_lambda", 0.5, 5.0, 201, SweepScale::linear};
  suite.push_back(ff);
  ExperimentConfig small = ExperimentConfig::defaults(Experiment::snr_distance);
  small.lambda_over_a = 25.0;
  suite.push_back(small);
  std::size_t tables = 0;
  try {
    for (const auto& c : suite) {
      const SweepTable t = run_experiment(c);
      ++tables;
      const auto& s = t.metadata["summary"];
      if (s.contains("max_grid_relative_change")) {
        worst = std::max(worst, s["max_grid_relative_change"].get<double>());
      }
    }
  } catch (const NumericalError& e) {
    return {false, std::string("rate integral failed to converge: ") + e.what()};
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-6 && secs < 60.0,
          fmtn("%zu tables, worst grid-doubling change %.2e (< 1e-6), %.2f s (< 60 s)", tables, worst, secs)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"EMF-oracle equivalence", ac01},    {"radiated-power identity", ac02},
      {"FF/NF algebraic consistency", ac03}, {"reciprocity and nulls", ac04},
      {"noise-path oracle", ac05},         {"water-filling", ac06},
      {"SNR crossover", ac07},             {"FF validity onset", ac08},
      {"regime ordering", ac09},           {"OPA gains", ac10},
      {"bandwidth-ratio behaviour", ac11}, {"numerical hygiene", ac12},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(id)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("AC%02d %s  %-30s %s\n", id, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
