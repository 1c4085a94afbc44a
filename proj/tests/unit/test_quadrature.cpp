#include <doctest.h>

#include <cmath>

#include "chulink/quadrature.hpp"

using namespace chulink::quadrature;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u}) {
    const Rule rule = gauss_legendre(n, 0.0, 2.0);
    const int deg = static_cast<int>(2 * n - 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], deg);
    CHECK(sum == doctest::Approx(std::pow(2.0, deg + 1) / (deg + 1)).epsilon(1e-13));
  }
}

TEST_CASE("gauss-legendre nodes are interior and weights sum to the interval") {
  const Rule rule = gauss_legendre(64, -1.0, 3.0);
  double w = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    CHECK(rule.nodes[i] > -1.0);
    CHECK(rule.nodes[i] < 3.0);
    w += rule.weights[i];
  }
  CHECK(w == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("simpson weights") {
  const auto w = simpson_weights(5, 0.0, 1.0);
  CHECK(w[0] == doctest::Approx(1.0 / 12));
  CHECK(w[1] == doctest::Approx(4.0 / 12));
  CHECK(w[2] == doctest::Approx(2.0 / 12));

  // Exact for cubics.
  const auto x = linspace(1.0, 3.0, 11);
  const auto v = simpson_weights(11, 1.0, 3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += v[i] * x[i] * x[i] * x[i];
  CHECK(sum == doctest::Approx((81.0 - 1.0) / 4.0).epsilon(1e-14));

  CHECK_THROWS(simpson_weights(4, 0.0, 1.0));
  CHECK_THROWS(simpson_weights(1, 0.0, 1.0));
}

TEST_CASE("linspace hits both end points") {
  const auto x = linspace(0.1, 2.0, 201);
  CHECK(x.front() == 0.1);
  CHECK(x.back() == 2.0);
  CHECK(x.size() == 201);
}
