#include "swlab/series.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlab {
namespace {

// k-th derivative of f(x) = exp(-lambda x) x^{-3/2} evaluated at x, written as
// exp(-lambda x) * sum_j c_j x^{-3/2-j}. Coefficient recursion:
// P_{k+1} = P_k' - lambda P_k.
double f_derivative(double lambda, double x, int k) {
  std::array<double, 8> c{};
  c[0] = 1.0;
  for (int step = 0; step < k; ++step) {
    std::array<double, 8> n{};
    for (int j = 0; j <= step; ++j) {
      n[j + 1] += -(1.5 + j) * c[j];
      n[j] += -lambda * c[j];
    }
    c = n;
  }
  double s = 0.0;
  double p = std::pow(x, -1.5);
  for (int j = 0; j <= k; ++j) {
    s += c[j] * p;
    p /= x;
  }
  return std::exp(-lambda * x) * s;
}

// integral_M^inf exp(-lambda x) x^{-3/2} dx, closed form via erfc.
double tail_integral(double lambda, double M) {
  if (lambda == 0.0) return 2.0 / std::sqrt(M);
  double sl = std::sqrt(lambda);
  return 2.0 * std::exp(-lambda * M) / std::sqrt(M) -
         2.0 * std::sqrt(std::numbers::pi) * sl * std::erfc(sl * std::sqrt(M));
}

}  // namespace

double power_tail_sum(double lambda, std::int64_t N) {
  if (lambda < 0.0) throw std::domain_error("power_tail_sum: lambda < 0");
  if (N < 0) throw std::domain_error("power_tail_sum: N < 0");
  // Sum explicitly up to a point where Euler-Maclaurin corrections through
  // f^(5) leave error below 1e-17 relative, then switch.
  const std::int64_t M0 = std::max<std::int64_t>(N + 1, 32);
  double s = 0.0;
  for (std::int64_t n = M0 - 1; n > N; --n) {
    s += std::exp(-lambda * static_cast<double>(n)) *
         std::pow(static_cast<double>(n), -1.5);
  }
  const double M = static_cast<double>(M0);
  double em = tail_integral(lambda, M) + 0.5 * f_derivative(lambda, M, 0) -
              f_derivative(lambda, M, 1) / 12.0 +
              f_derivative(lambda, M, 3) / 720.0 -
              f_derivative(lambda, M, 5) / 30240.0;
  return s + em;
}

double zeta_three_halves() {
  static const double v = 1.0 + power_tail_sum(0.0, 1);
  return v;
}

double polylog_three_halves(double lambda) {
  if (lambda < 0.0) throw std::domain_error("polylog_three_halves: lambda < 0");
  return std::exp(-lambda) + power_tail_sum(lambda, 1);
}

double beta_c_exact() {
  static const double v =
      std::log(std::sqrt(2.0 * std::numbers::pi) / zeta_three_halves());
  return v;
}

}  // namespace swlab
