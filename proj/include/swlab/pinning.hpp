#pragma once

#include <string>

namespace swlab {

// Pinning potential phi on the strip [0, a]. Three variants:
//  - constant:    phi(x) = beta
//  - smooth_bump: phi(x) = beta_c + log g_a(x), the mollified 1/a bump with
//                 boundary layer eps = a^2 (plateau value 1/a + eps,
//                 g_a(a) = eps)
//  - zero:        phi(x) = 0
struct PinningFunction {
  enum class Kind { constant, smooth_bump, zero };
  Kind kind = Kind::zero;
  double a = 0.0;
  double beta = 0.0;  // constant variant only

  // Throws std::domain_error for x outside [0, a].
  double eval(double x) const;
  std::string label() const;
};

PinningFunction make_constant_pinning(double a, double beta);
PinningFunction make_smooth_bump_pinning(double a);
PinningFunction make_zero_pinning(double a);

// integral_0^a exp(phi(x)) dx. Closed form for constant/zero; plateau +
// boundary-layer Gauss-Legendre for the smooth bump (the layer integrand is
// smooth in t = (a-x)/eps).
double integral_exp_pinning(const PinningFunction& p);

// Condition (A) score: (1/a) (log integral_0^a e^{phi} - beta_c).
// Constant beta with a e^{beta - beta_c} = 1 scores exactly 0.
double condition_A_score(const PinningFunction& p);

}  // namespace swlab
