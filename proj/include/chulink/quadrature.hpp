#pragma once

#include <cstddef>
#include <vector>

namespace chulink::quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi].
Rule gauss_legendre(std::size_t n, double lo = -1.0, double hi = 1.0);

/// Composite Simpson weights for n (odd, >= 3) equally spaced nodes on [lo, hi].
std::vector<double> simpson_weights(std::size_t n, double lo, double hi);

/// n equally spaced nodes including both end points.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace chulink::quadrature
