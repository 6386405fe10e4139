#include <doctest.h>

#include <cmath>

#include "blv/quadrature.hpp"

namespace {

double integrate(const blv::QuadratureRule& rule, const std::function<double(double)>& f) {
  double s = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("gauss-legendre weights sum to 2 and nodes are symmetric") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto rule = blv::gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double wsum = 0;
    for (double w : rule.weights) {
      CHECK(w > 0);
      wsum += w;
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i) {
      CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[n - 1 - i]).epsilon(1e-13));
      if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
  }
}

TEST_CASE("gauss-legendre is exact up to degree 2n-1") {
  // Exact monomial moments on [-1, 1]: x^k integrates to 0 (odd) or 2/(k+1).
  for (int n : {3, 5, 8}) {
    const auto rule = blv::gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double got = integrate(rule, [&](double x) { return std::pow(x, k); });
      const double want = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
      CHECK(got == doctest::Approx(want).epsilon(1e-13).scale(1.0));
    }
  }
}

TEST_CASE("gauss-legendre 64 handles high-degree polynomials") {
  const auto rule = blv::gauss_legendre(64);
  // x^120 is within the exactness range of the 64-point rule.
  const double got = integrate(rule, [](double x) { return std::pow(x, 120); });
  CHECK(got == doctest::Approx(2.0 / 121).epsilon(1e-10));
}

TEST_CASE("adaptive simpson on smooth integrands") {
  const double e1 = blv::adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  CHECK(e1 == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));

  const double s = blv::adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                                         std::acos(-1.0), 1e-12);
  CHECK(s == doctest::Approx(2.0).epsilon(1e-11));

  // Narrow bump: forces recursion depth. On [-1, 2] the missing Gaussian
  // tails are below 1e-70, so the whole-line value is exact at double
  // precision.
  const double bump = blv::adaptive_simpson(
      [](double x) { return std::exp(-100.0 * (x - 0.3) * (x - 0.3)); }, -1.0, 2.0, 1e-10);
  const double want = std::sqrt(std::acos(-1.0) / 100.0);
  CHECK(bump == doctest::Approx(want).epsilon(1e-9));
}

TEST_SUITE_END();
