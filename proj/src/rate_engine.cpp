#include "chulink/rate_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chulink/errors.hpp"
#include "chulink/quadrature.hpp"

namespace chulink {

namespace {

constexpr double kConvergenceTol = 1e-6;
constexpr int kMaxDoublings = 8;
constexpr double kLevelTol = 1e-12;
constexpr int kMaxBisections = 200;

double log2_1p(double x) { return std::log1p(x) / std::log(2.0); }

double relative_change(double coarse, double fine) {
  if (coarse == fine) return 0.0;
  return std::abs(fine - coarse) / std::max(std::abs(fine), std::abs(coarse));
}

// Samples γ on successively doubled grids, reusing the shared nodes, and
// hands each (weights, γ) pair to `integrate` until the result settles.
template <typename Integrate>
RateEstimate refine(const Band& band, const GammaFn& gamma, Integrate&& integrate) {
  band.validate();
  std::size_t n = band.grid_points;
  std::vector<double> freqs = band.grid();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = gamma(freqs[i]);
  double previous = integrate(quadrature::simpson_weights(n, band.f_lo, band.f_hi), g);

  double change = std::numeric_limits<double>::infinity();
  for (int level = 0; level < kMaxDoublings; ++level) {
    const std::size_t m = 2 * n - 1;
    std::vector<double> finer_f = quadrature::linspace(band.f_lo, band.f_hi, m);
    std::vector<double> finer_g(m);
    for (std::size_t i = 0; i < m; ++i) {
      finer_g[i] = (i % 2 == 0) ? g[i / 2] : gamma(finer_f[i]);
    }
    const double current = integrate(quadrature::simpson_weights(m, band.f_lo, band.f_hi), finer_g);
    change = relative_change(previous, current);
    n = m;
    g = std::move(finer_g);
    if (change < kConvergenceTol) return {current, n, change};
    previous = current;
  }
  throw NumericalError("rate integral did not converge after grid doubling", change);
}

}  // namespace

Band Band::centered(double f_c, double width, std::size_t grid_points) {
  return Band{f_c - 0.5 * width, f_c + 0.5 * width, grid_points};
}

void Band::validate() const {
  if (!(f_lo > 0.0) || !(f_hi > f_lo) || !std::isfinite(f_hi)) {
    std::ostringstream os;
    os << "Band: need 0 < f_lo < f_hi, got [" << f_lo << ", " << f_hi << "]";
    throw DomainError(os.str());
  }
  if (grid_points < 3 || grid_points % 2 == 0) {
    throw DomainError("Band: grid_points must be odd and >= 3");
  }
}

std::vector<double> Band::grid() const {
  validate();
  return quadrature::linspace(f_lo, f_hi, grid_points);
}

void PowerBudget::validate() const {
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw DomainError("PowerBudget: p_max must be positive");
}

RateEstimate rate_uniform(const Band& band, const PowerBudget& budget, const GammaFn& gamma) {
  budget.validate();
  const double psd = budget.p_max / band.width();
  return refine(band, gamma, [psd](const std::vector<double>& w, const std::vector<double>& g) {
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * log2_1p(psd * g[i]);
    return sum;
  });
}

RateEstimate rate_uniform(const Band& band, const PowerBudget& budget, const LinkModel& link) {
  link.validate();
  return rate_uniform(band, budget, [&link](double f) { return link.gamma(f); });
}

WaterfillSolution waterfill_weighted(std::span<const double> weights,
                                     std::span<const double> gamma, double p_max) {
  if (weights.size() != gamma.size()) throw ShapeError("waterfill: weights and gamma differ in length");
  PowerBudget{p_max}.validate();

  double total_weight = 0.0;
  double min_inverse = INFINITY;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] < 0.0 || !std::isfinite(gamma[i])) {
      throw DomainError("waterfill: gamma must be finite and non-negative");
    }
    if (gamma[i] > 0.0 && weights[i] > 0.0) {
      total_weight += weights[i];
      min_inverse = std::min(min_inverse, 1.0 / gamma[i]);
    }
  }
  if (total_weight == 0.0) throw DomainError("waterfill: gamma is identically zero, no allocation exists");

  // Work with the level above the strongest point, delta = nu - min(1/gamma).
  // At low SNR 1/gamma dwarfs the allocated power; offsets keep p exact.
  std::vector<double> offset(gamma.size(), INFINITY);
  double max_offset = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] > 0.0 && weights[i] > 0.0) {
      offset[i] = 1.0 / gamma[i] - min_inverse;
      max_offset = std::max(max_offset, offset[i]);
    }
  }
  auto power_at = [&](double delta) {
    double p = 0.0;
    for (std::size_t i = 0; i < offset.size(); ++i) {
      if (offset[i] < delta) p += weights[i] * (delta - offset[i]);
    }
    return p;
  };

  // power_at(lo) < p_max <= power_at(hi).
  double lo = 0.0;
  double hi = p_max / total_weight + max_offset;
  for (int it = 0; it < kMaxBisections && hi - lo > kLevelTol * lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    (power_at(mid) > p_max ? hi : lo) = mid;
  }
  double delta = 0.5 * (lo + hi);

  // Exact KKT level on the active set, repeated until the set is stable.
  for (int it = 0; it < 16; ++it) {
    double active_weight = 0.0;
    double active_offset = 0.0;
    for (std::size_t i = 0; i < offset.size(); ++i) {
      if (offset[i] < delta) {
        active_weight += weights[i];
        active_offset += weights[i] * offset[i];
      }
    }
    if (active_weight == 0.0) break;
    const double exact = (p_max + active_offset) / active_weight;
    if (std::abs(power_at(exact) - p_max) > std::abs(power_at(delta) - p_max)) break;
    const bool same = exact == delta;
    delta = exact;
    if (same) break;
  }

  WaterfillSolution sol;
  sol.water_level = min_inverse + delta;
  sol.gamma0 = 1.0 / sol.water_level;
  sol.pt_star.values.resize(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const double p = offset[i] < delta ? delta - offset[i] : 0.0;
    sol.pt_star.values[i] = p;
    if (p > 0.0) {
      ++sol.active_points;
      sol.allocated_power += weights[i] * p;
      sol.rate_bits_s += weights[i] * log2_1p(p * gamma[i]);
    }
  }
  const double residual = std::abs(sol.allocated_power - p_max) / p_max;
  if (residual > 1e-6) throw NumericalError("waterfill: power constraint not met", residual);
  return sol;
}

WaterfillSolution waterfill(const Band& band, const PowerBudget& budget,
                            const SpectralCurve& gamma_curve) {
  band.validate();
  budget.validate();
  gamma_curve.validate();
  if (gamma_curve.size() != band.grid_points || gamma_curve.freq_hz.front() != band.f_lo ||
      gamma_curve.freq_hz.back() != band.f_hi) {
    throw ShapeError("waterfill: gamma curve is not sampled on the band grid");
  }
  const auto w = quadrature::simpson_weights(band.grid_points, band.f_lo, band.f_hi);
  WaterfillSolution sol = waterfill_weighted(w, gamma_curve.values, budget.p_max);
  sol.pt_star.freq_hz = gamma_curve.freq_hz;
  return sol;
}

RateEstimate rate_opa(const Band& band, const PowerBudget& budget, const GammaFn& gamma) {
  budget.validate();
  return refine(band, gamma, [&budget](const std::vector<double>& w, const std::vector<double>& g) {
    return waterfill_weighted(w, g, budget.p_max).rate_bits_s;
  });
}

RateEstimate rate_opa(const Band& band, const PowerBudget& budget, const LinkModel& link) {
  link.validate();
  return rate_opa(band, budget, [&link](double f) { return link.gamma(f); });
}

}  // namespace chulink
