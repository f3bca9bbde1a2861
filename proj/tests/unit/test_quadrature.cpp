#include <cmath>
#include <numbers>

#include "doctest.h"
#include "multistable/error.hpp"
#include "multistable/quadrature.hpp"

using namespace multistable;

TEST_CASE("Gauss-Legendre rule integrates polynomials up to degree 31 exactly") {
  const auto& x = gauss_legendre_nodes();
  const auto& w = gauss_legendre_weights();
  REQUIRE(x.size() == 16);
  for (int deg = 0; deg <= 31; ++deg) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], deg);
    const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("smooth integrand on a bounded interval") {
  IntegrandInfo info;
  info.lo = 0.0;
  info.hi = std::numbers::pi;
  const auto r = integrate([](double x) { return std::sin(x); }, info, {});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("declared singularity x^-1/2 on [0, 1]") {
  IntegrandInfo info;
  info.lo = 0.0;
  info.hi = 1.0;
  info.singularities = {{0.0, -0.5}};
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, info, {});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("power tail is integrated, not truncated") {
  IntegrandInfo info;
  info.lo = 1.0;
  info.hi = kInf;
  info.right = Tail::power(1.0, 1.5);
  const auto r = integrate([](double x) { return std::pow(x, -1.5); }, info, {});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("exponential tail truncation records the discarded mass") {
  IntegrandInfo info;
  info.lo = 0.0;
  info.hi = kInf;
  info.right = Tail::exponential(0.0, 2.0);
  const auto r = integrate([](double x) { return std::exp(-2.0 * x); }, info, {});
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.truncated_mass <= 1e-12);
}

TEST_CASE("breakpoints give exact results for step integrands") {
  IntegrandInfo info;
  info.lo = 0.0;
  info.hi = 1.0;
  info.breakpoints = {1.0 / 3.0};
  const auto r = integrate([](double x) { return x < 1.0 / 3.0 ? 1.0 : 4.0; }, info, {});
  CHECK(r.value == doctest::Approx(1.0 / 3.0 + 4.0 * 2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("cell cap raises NumericError") {
  IntegrandInfo info;
  info.lo = 0.0;
  info.hi = 1.0;
  QuadratureSpec spec;
  spec.max_cells = 40;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-15;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-4)); }, info, spec), NumericError);
}

TEST_CASE("pairwise_sum depends only on order") {
  const double t[] = {1e16, 1.0, -1e16, 1.0, 3.0};
  CHECK(pairwise_sum(t, 5) == pairwise_sum(t, 5));
  const double u[] = {1.0, 2.0, 3.0, 4.0};
  CHECK(pairwise_sum(u, 4) == 10.0);
}
