#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "chulink/link_channel.hpp"

namespace chulink {

/// Positive-frequency band [f_lo, f_hi] sampled on an odd number of equally
/// spaced points (composite Simpson).
struct Band {
  double f_lo;
  double f_hi;
  std::size_t grid_points = 2001;

  static Band centered(double f_c, double width, std::size_t grid_points = 2001);

  void validate() const;
  double center() const { return 0.5 * (f_lo + f_hi); }
  double width() const { return f_hi - f_lo; }
  std::vector<double> grid() const;
};

struct PowerBudget {
  double p_max;  // [W]

  void validate() const;
};

/// γ(f) = |H(f)|²/N(f) as a callable.
using GammaFn = std::function<double(double)>;

struct RateEstimate {
  double bits_per_s = 0.0;
  std::size_t grid_points = 0;     // grid of the returned (finest) estimate
  double relative_change = 0.0;    // vs the previous grid
};

struct WaterfillSolution {
  double water_level = 0.0;  // ν [W/Hz]; pt*(f) = max(0, ν - 1/γ(f))
  double gamma0 = 0.0;       // activity threshold 1/ν
  SpectralCurve pt_star;     // [W/Hz]
  double rate_bits_s = 0.0;  // ∫ max(0, log2(γ/γ0)) df
  double allocated_power = 0.0;
  std::size_t active_points = 0;
};

/// Uniform allocation P_max/W: ∫ log2(1 + (P_max/W) γ(f)) df. The grid is
/// doubled from band.grid_points until the estimate moves by < 1e-6
/// relative (at most 8 doublings, else NumericalError).
RateEstimate rate_uniform(const Band& band, const PowerBudget& budget, const GammaFn& gamma);
RateEstimate rate_uniform(const Band& band, const PowerBudget& budget, const LinkModel& link);

/// Water-filling over quadrature-weighted samples: maximizes
/// Σ w_i log2(1 + p_i γ_i) subject to Σ w_i p_i = P_max, p_i >= 0.
/// Bisection on the water level (1e-12 relative or 200 iterations), then the
/// level is recomputed in closed form on the resulting active set.
WaterfillSolution waterfill_weighted(std::span<const double> weights,
                                     std::span<const double> gamma, double p_max);

/// Water-filling on a γ curve sampled on band.grid() (Simpson weights).
WaterfillSolution waterfill(const Band& band, const PowerBudget& budget,
                            const SpectralCurve& gamma_curve);

/// Optimal power allocation rate, with the same grid-doubling as rate_uniform.
RateEstimate rate_opa(const Band& band, const PowerBudget& budget, const GammaFn& gamma);
RateEstimate rate_opa(const Band& band, const PowerBudget& budget, const LinkModel& link);

}  // namespace chulink
