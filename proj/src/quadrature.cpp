#include "chulink/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "chulink/em_core.hpp"

namespace chulink::quadrature {

Rule gauss_legendre(std::size_t n, double lo, double hi) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");

  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const double dn = static_cast<double>(n);

  // Roots are symmetric; Newton from Tricomi's initial guess on the upper half.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(constants::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * z * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dn * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

std::vector<double> simpson_weights(std::size_t n, double lo, double hi) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("simpson_weights: node count must be odd and >= 3");
  }
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i == n - 1) {
      w[i] = h / 3.0;
    } else {
      w[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
  }
  return w;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out[n - 1] = hi;
  return out;
}

}  // namespace chulink::quadrature
