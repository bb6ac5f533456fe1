#include "swlab/pinning.hpp"

#include <cmath>
#include <stdexcept>

#include "swlab/series.hpp"

namespace swlab {
namespace {

// f(t) = exp(-1/t) for t > 0, else 0; the standard C^infinity cutoff seed.
double cutoff(double t) {
  if (t <= 0.0) return 0.0;
  return std::exp(-1.0 / t);
}

// Smooth step s(t) = f(t) / (f(1-t) + f(t)): 0 at t<=0, 1 at t>=1.
// s(t) + s(1-t) = 1, so integral_0^1 s = 1/2 exactly.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double ft = cutoff(t);
  return ft / (cutoff(1.0 - t) + ft);
}

void require_strip(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("pinning: strip width a must be positive");
  }
}

// g_a(x) = eps + (1/a) s((a - x)/eps), eps = a^2. Plateau 1/a + eps on
// [0, a - eps], ramps down to g_a(a) = eps across the boundary layer.
double bump_g(double a, double x) {
  const double eps = a * a;
  const double t = (a - x) / eps;
  return eps + smooth_step(t) / a;
}

// 4-point Gauss-Legendre nodes/weights on [0,1].
constexpr double kGlNode[4] = {0.06943184420297371, 0.33000947820757187,
                               0.6699905217924281, 0.9305681557970262};
constexpr double kGlWeight[4] = {0.17392742256872692, 0.32607257743127305,
                                 0.32607257743127305, 0.17392742256872692};

}  // namespace

double PinningFunction::eval(double x) const {
  if (!(x >= 0.0) || !(x <= a)) {
    throw std::domain_error("pinning: x outside [0, a]");
  }
  switch (kind) {
    case Kind::constant:
      return beta;
    case Kind::zero:
      return 0.0;
    case Kind::smooth_bump:
      return beta_c_exact() + std::log(bump_g(a, x));
  }
  throw std::logic_error("pinning: unknown kind");
}

std::string PinningFunction::label() const {
  switch (kind) {
    case Kind::constant:
      return "constant";
    case Kind::smooth_bump:
      return "smooth_bump";
    case Kind::zero:
      return "zero";
  }
  return "?";
}

PinningFunction make_constant_pinning(double a, double beta) {
  require_strip(a);
  return PinningFunction{PinningFunction::Kind::constant, a, beta};
}

PinningFunction make_smooth_bump_pinning(double a) {
  require_strip(a);
  if (a > 1.0) {
    // eps = a^2 must not exceed the strip width itself.
    throw std::domain_error("pinning: smooth bump requires a <= 1");
  }
  return PinningFunction{PinningFunction::Kind::smooth_bump, a, 0.0};
}

PinningFunction make_zero_pinning(double a) {
  require_strip(a);
  return PinningFunction{PinningFunction::Kind::zero, a, 0.0};
}

double integral_exp_pinning(const PinningFunction& p) {
  switch (p.kind) {
    case PinningFunction::Kind::constant:
      return p.a * std::exp(p.beta);
    case PinningFunction::Kind::zero:
      return p.a;
    case PinningFunction::Kind::smooth_bump: {
      // integral_0^a g = (a - eps)(1/a + eps) + eps^2 + (eps/a) * I_layer,
      // with I_layer = integral_0^1 s(t) dt computed by composite GL4 so the
      // code does not silently rely on the exact value 1/2.
      const double a = p.a;
      const double eps = a * a;
      double layer = 0.0;
      const int panels = 16;
      const double hp = 1.0 / panels;
      for (int k = 0; k < panels; ++k) {
        for (int q = 0; q < 4; ++q) {
          layer += hp * kGlWeight[q] * smooth_step((k + kGlNode[q]) * hp);
        }
      }
      const double gint =
          (a - eps) * (1.0 / a + eps) + eps * eps + eps / a * layer;
      return std::exp(beta_c_exact()) * gint;
    }
  }
  throw std::logic_error("pinning: unknown kind");
}

double condition_A_score(const PinningFunction& p) {
  return (std::log(integral_exp_pinning(p)) - beta_c_exact()) / p.a;
}

}  // namespace swlab
