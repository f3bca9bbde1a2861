#include <cmath>
#include <random>

#include "doctest.h"
#include "multistable/error.hpp"
#include "multistable/function_spaces.hpp"

using namespace multistable;

TEST_CASE("index function families respect their bounds") {
  const IndexFunction s = IndexFunction::sinusoidal(1.5, 0.3, 2.0, 1.2, 1.8);
  for (double x = -5.0; x <= 5.0; x += 0.01) {
    CHECK(s(x) >= 1.2);
    CHECK(s(x) <= 1.8);
  }
  CHECK(s(0.5) == doctest::Approx(1.8));
  CHECK_THROWS(IndexFunction::sinusoidal(1.5, 0.5, 2.0, 1.2, 1.8));
  CHECK_THROWS(IndexFunction::constant(2.5));
  CHECK_THROWS(IndexFunction::constant(0.0));
  const IndexFunction a = IndexFunction::affine_clamped(1.0, 0.5, 1.1, 1.9);
  CHECK(a(-10.0) == 1.1);
  CHECK(a(0.5) == doctest::Approx(1.25));
  CHECK(a(10.0) == 1.9);
  const IndexFunction p = IndexFunction::piecewise_constant({0.0, 1.0}, {1.0, 1.5, 2.0}, 1.0, 2.0);
  CHECK(p(-0.1) == 1.0);
  CHECK(p(0.0) == 1.5);
  CHECK(p(1.0) == 2.0);
  const IndexFunction t = IndexFunction::tabulated({0.0, 1.0}, {1.2, 1.6}, 1.2, 1.6);
  CHECK(t(0.25) == doctest::Approx(1.3));
  CHECK(t(-3.0) == 1.2);
}

TEST_CASE("dyadic discretization takes the left endpoint of each cell") {
  const IndexFunction s = IndexFunction::sinusoidal(1.5, 0.3, 2.0, 1.2, 1.8);
  const IndexFunction d = s.dyadic(3);
  for (int r = -8; r < 8; ++r) {
    const double left = r / 8.0;
    CHECK(d(left) == s(left));
    CHECK(d(left + 0.1) == s(left));
  }
}

TEST_CASE("norm closed forms") {
  CHECK(luxemburg_norm(RealFunction::indicator(0, 1), IndexFunction::constant(1.7)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(luxemburg_norm(RealFunction::indicator(0, 2), IndexFunction::constant(1.0)) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(luxemburg_norm(RealFunction::indicator(0, 8), IndexFunction::constant(1.5)) ==
        doctest::Approx(4.0).epsilon(1e-9));
  CHECK(luxemburg_norm(RealFunction::zero(), IndexFunction::constant(1.5)) == 0.0);
  // exp(-x) under alpha = 2: \int exp(-2x)/l^2 = 1/(2 l^2) = 1
  CHECK(luxemburg_norm(RealFunction::exponential(1.0), IndexFunction::constant(2.0)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("modular is strictly decreasing in lambda and equals 1 at the norm") {
  const RealFunction f = RealFunction::step({0.0, 0.5, 1.5}, {2.0, -0.5});
  const IndexFunction alpha = IndexFunction::sinusoidal(1.4, 0.4, 1.0, 1.0, 1.8);
  double prev = kInf;
  for (double l = 0.25; l < 10.0; l *= 1.5) {
    const double m = modular(f, alpha, l);
    CHECK(m < prev);
    prev = m;
  }
  CHECK(modular(f, alpha, luxemburg_norm(f, alpha)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("norm properties on random step functions") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 10; ++k) {
    const RealFunction f = RealFunction::step({0.0, 0.3, 0.9, 1.4}, {U(gen) - 0.5, 2 * U(gen), -U(gen)});
    const RealFunction g = RealFunction::step({0.2, 0.7, 1.1}, {U(gen), -2 * U(gen)});
    const IndexFunction alpha = IndexFunction::sinusoidal(1.5, 0.25, 0.7 + U(gen), 1.25, 1.75, 3 * U(gen));
    const double nf = luxemburg_norm(f, alpha);
    const double ng = luxemburg_norm(g, alpha);
    const double c = -3.0 + 6.0 * U(gen);
    CHECK(luxemburg_norm(f.scaled(c), alpha) == doctest::Approx(std::abs(c) * nf).epsilon(1e-8));
    const std::vector<RealFunction> fs{f, g};
    const std::vector<double> ones{1.0, 1.0};
    CHECK(luxemburg_norm(RealFunction::linear_combination(fs, ones), alpha) <= nf + ng + 1e-8);
    const double p = 0.8 + U(gen);
    CHECK(luxemburg_norm(f, IndexFunction::constant(p)) == doctest::Approx(norm_p(f, p)).epsilon(1e-8));
  }
}

TEST_CASE("integrate_ab_power takes the pointwise maximum") {
  // |2|^{1,2} = 4 on [0, 1), |0.5|^{1,2} = 0.5 on [1, 2)
  const RealFunction f = RealFunction::step({0.0, 1.0, 2.0}, {2.0, 0.5});
  CHECK(integrate_ab_power(f, 1.0, 2.0) == doctest::Approx(4.5).epsilon(1e-12));
}

TEST_CASE("log-continuity diagnostic separates smooth and jumping indices") {
  const std::vector<double> rs{1e-1, 1e-2, 1e-3, 1e-4};
  const auto smooth = log_continuity_diagnostic(IndexFunction::sinusoidal(1.5, 0.3, 2.0, 1.2, 1.8), -1, 1, rs);
  CHECK(smooth.plausibly_satisfied);
  const auto jump = log_continuity_diagnostic(IndexFunction::piecewise_constant({0.0}, {1.2, 1.8}, 1.2, 1.8), -1, 1, rs);
  CHECK_FALSE(jump.plausibly_satisfied);
  const auto flat = log_continuity_diagnostic(IndexFunction::constant(1.5), -1, 1, rs);
  CHECK(flat.plausibly_satisfied);
}
