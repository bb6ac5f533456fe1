#include <stdexcept>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "swlab/series.hpp"

using namespace swlab;

TEST_CASE("series: zeta(3/2) reference value") {
  CHECK(zeta_three_halves() ==
        doctest::Approx(2.6123753486854883).epsilon(1e-15));
}

TEST_CASE("series: critical point identity") {
  // exp(beta_c) = sqrt(2 pi) / zeta(3/2)
  const double lhs = std::exp(beta_c_exact());
  const double rhs = std::sqrt(2.0 * std::numbers::pi) / zeta_three_halves();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-15));
  CHECK(std::exp(beta_c_exact()) ==
        doctest::Approx(0.95952071967464464).epsilon(1e-14));
  CHECK(beta_c_exact() == doctest::Approx(-0.041321369526112486).epsilon(1e-12));
}

TEST_CASE("series: tail sum consistency") {
  // T_0(0) is the whole series; T_0(N) + partial sum = zeta(3/2).
  CHECK(power_tail_sum(0.0, 0) ==
        doctest::Approx(zeta_three_halves()).epsilon(1e-14));
  double partial = 0.0;
  for (int n = 1; n <= 1000; ++n) partial += std::pow(n, -1.5);
  CHECK(partial + power_tail_sum(0.0, 1000) ==
        doctest::Approx(zeta_three_halves()).epsilon(1e-13));
  // Tail asymptotic: T_0(N) ~ 2/sqrt(N).
  CHECK(power_tail_sum(0.0, 1 << 20) * std::sqrt(double(1 << 20)) / 2.0 ==
        doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("series: tail sum with exponential weight") {
  // Brute-force comparison at moderate lambda (series converges fast).
  const double lambda = 0.05;
  double brute = 0.0;
  for (int n = 11; n <= 4000; ++n) {
    brute += std::exp(-lambda * n) * std::pow(n, -1.5);
  }
  CHECK(power_tail_sum(lambda, 10) == doctest::Approx(brute).epsilon(1e-12));
  CHECK_THROWS_AS((void)power_tail_sum(-0.1, 5), std::domain_error);
}

TEST_CASE("series: polylog limits") {
  CHECK(polylog_three_halves(0.0) ==
        doctest::Approx(zeta_three_halves()).epsilon(1e-14));
  double brute = 0.0;
  for (int n = 1; n <= 4000; ++n) {
    brute += std::exp(-0.2 * n) * std::pow(n, -1.5);
  }
  CHECK(polylog_three_halves(0.2) == doctest::Approx(brute).epsilon(1e-12));
  // Monotone decreasing in lambda.
  CHECK(polylog_three_halves(0.1) > polylog_three_halves(0.2));
  CHECK(polylog_three_halves(1.0) > polylog_three_halves(2.0));
}
