#include <cmath>
#include <vector>

#include "doctest.h"
#include "multistable/error.hpp"
#include "multistable/multistable.hpp"

using namespace multistable;

TEST_CASE("interval sets merge, intersect and unite") {
  const IntervalSet a({{0.5, 1.0}, {0.0, 0.25}, {0.25, 0.3}});
  REQUIRE(a.pieces().size() == 2);
  CHECK(a.pieces()[0].hi == 0.3);
  CHECK(a.length() == doctest::Approx(0.8));
  const IntervalSet b({{0.2, 0.6}});
  CHECK(a.overlap(b) == doctest::Approx(0.2));
  CHECK(a.unite(b).pieces().size() == 1);
  CHECK(a.indicator()(0.7) == 1.0);
  CHECK(a.indicator()(0.4) == 0.0);
}

TEST_CASE("cf_joint closed forms") {
  const IndexFunction pw = IndexFunction::piecewise_constant({0.5}, {1.0, 2.0}, 1.0, 2.0);
  const CfSpec spec{{RealFunction::indicator(0, 1)}, {1.5}, pw};
  CHECK(cf_joint(spec) == doctest::Approx(std::exp(-(0.5 * 1.5 + 0.5 * 2.25))).epsilon(1e-12));
  const CfSpec two{{RealFunction::indicator(0, 1), RealFunction::indicator(0.5, 2)}, {1.0, -2.0},
                   IndexFunction::constant(1.5)};
  const double e = 0.5 * 1.0 + 0.5 * 1.0 + 1.0 * std::pow(2.0, 1.5);
  CHECK(cf_exponent(two) == doctest::Approx(e).epsilon(1e-12));
}

TEST_CASE("scaled_cf freezes the index for constant alpha") {
  const IndexFunction alpha = IndexFunction::constant(1.3);
  const CfSpec spec{{RealFunction::indicator(0, 1)}, {0.7}, alpha};
  for (double r : {1.0, 0.1, 0.001}) CHECK(scaled_cf(spec, 0.4, r) == doctest::Approx(cf_joint(spec)).epsilon(1e-12));
}

TEST_CASE("cells use left-endpoint alpha and scale 2^-n/alpha") {
  const IndexFunction alpha = IndexFunction::affine_clamped(1.2, 0.5, 1.2, 1.7);
  const MeasureIncrements inc = simulate_increments(alpha, 4, 0.1, 0.9, RngStream::from_seed(1));
  CHECK(inc.x_lo() == 0.0625);
  CHECK(inc.x_hi() == 0.9375);
  for (std::size_t k = 0; k < inc.size(); ++k) CHECK(inc.alpha_used[k] == alpha(inc.x_left(k)));
}

TEST_CASE("cell draws do not depend on the window") {
  const IndexFunction alpha = IndexFunction::constant(1.5);
  const RngStream s = RngStream::from_seed(2);
  const MeasureIncrements wide = simulate_increments(alpha, 5, -1.0, 2.0, s);
  const MeasureIncrements narrow = simulate_increments(alpha, 5, 0.5, 0.75, s);
  const std::size_t offset = static_cast<std::size_t>(narrow.first_cell - wide.first_cell);
  for (std::size_t k = 0; k < narrow.size(); ++k) CHECK(narrow.draws[k] == wide.draws[offset + k]);
}

TEST_CASE("exact additivity on disjoint sets, bitwise") {
  const IndexFunction alpha = IndexFunction::sinusoidal(1.5, 0.3, 1.0, 1.2, 1.8);
  const IntervalSet a({{0.11, 0.4}, {0.77, 0.9}});
  const IntervalSet b({{0.4, 0.61}, {0.93, 1.7}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const MeasureIncrements inc = simulate_increments(alpha, 7, 0.0, 2.0, RngStream::from_seed(seed));
    CHECK(measure_exact(a.unite(b), inc) == measure_exact(a, inc) + measure_exact(b, inc));
  }
}

TEST_CASE("integrate_sample is linear up to rounding") {
  const IndexFunction alpha = IndexFunction::constant(1.7);
  const MeasureIncrements inc = simulate_increments(alpha, 8, 0.0, 3.0, RngStream::from_seed(3));
  const RealFunction f = RealFunction::exponential(2.0, 0.5);
  const RealFunction g = RealFunction::indicator(0.3, 2.2, -1.5);
  const std::vector<RealFunction> fs{f, g};
  const std::vector<double> cs{2.0, -0.5};
  const double lhs = integrate_sample(RealFunction::linear_combination(fs, cs), inc);
  const double rhs = 2.0 * integrate_sample(f, inc) - 0.5 * integrate_sample(g, inc);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("indicator integral equals the measure of the set on aligned grids") {
  const MeasureIncrements inc = simulate_increments(IndexFunction::constant(1.1), 6, 0.0, 1.0, RngStream::from_seed(4));
  const IntervalSet s({{0.25, 0.75}});
  CHECK(integrate_sample(s.indicator(), inc) == measure_of_set(s, inc));
}

TEST_CASE("cell cap raises ResourceError") {
  SimulationLimits lim;
  lim.max_cells = 100;
  CHECK_THROWS_AS(simulate_increments(IndexFunction::constant(1.5), 10, 0.0, 1.0, RngStream::from_seed(0), lim),
                  ResourceError);
}

TEST_CASE("uncovered mass of a tail outside the window") {
  const MeasureIncrements inc = simulate_increments(IndexFunction::constant(1.5), 4, 0.0, 1.0, RngStream::from_seed(0));
  // \int_1^inf exp(-x)^{max(a,b)} with |y| <= 1 is \int_1^inf exp(-a x) for a = 1
  CHECK(uncovered_mass(RealFunction::exponential(1.0), inc, 1.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK(uncovered_mass(RealFunction::indicator(0.2, 0.8), inc, 1.0, 2.0) == 0.0);
}
