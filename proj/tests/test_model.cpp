#include <stdexcept>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "swlab/model.hpp"
#include "swlab/rng.hpp"

using namespace swlab;

TEST_CASE("model: gaussian density normalization and symmetry") {
  CHECK(gaussian_density(0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
  CHECK(gaussian_density(1.3) == doctest::Approx(gaussian_density(-1.3)));
  // Riemann sum of the density and of x^2 * density: mass 1, variance 1.
  const double h = 1e-3;
  double mass = 0.0, var = 0.0;
  for (double x = -10.0; x <= 10.0; x += h) {
    mass += h * gaussian_density(x);
    var += h * x * x * gaussian_density(x);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(var == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("model: sampler matches the density (moment check)") {
  const IncrementModel m = gaussian_model();
  REQUIRE(m.has_sampler());
  RngStream rng(7, 0);
  const int n = 100000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_increment(m, rng);
    s1 += x;
    s2 += x * x;
  }
  CHECK(std::abs(s1 / n) < 0.015);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("model: density-only variant refuses to sample") {
  IncrementModel m = gaussian_model();
  m.sampler = nullptr;
  CHECK(!m.has_sampler());
  RngStream rng(1, 0);
  CHECK_THROWS_AS((void)sample_increment(m, rng), std::invalid_argument);
}

TEST_CASE("model: midpoint grid") {
  const Grid g = make_grid(0.4, 4);
  REQUIRE(g.M == 4);
  CHECK(g.w == doctest::Approx(0.1));
  CHECK(g.x[0] == doctest::Approx(0.05));
  CHECK(g.x[3] == doctest::Approx(0.35));
  // Midpoint rule integrates linear functions exactly.
  double s = 0.0;
  for (double x : g.x) s += g.w * (2.0 * x + 1.0);
  CHECK(s == doctest::Approx(0.4 * 0.4 + 0.4).epsilon(1e-14));
  CHECK_THROWS_AS((void)make_grid(-0.1, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)make_grid(0.1, 0), std::invalid_argument);
}
