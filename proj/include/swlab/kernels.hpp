#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "swlab/model.hpp"

namespace swlab {

// n^{-3/2} / sqrt(2 pi): the a = 0 return kernel of the Gaussian walk, exact.
double closed_form_fn(int n);

// Sparre-Andersen: P(S_1 > 0, ..., S_n > 0) = C(2n, n) 4^{-n} for any
// continuous symmetric increment law. survival_exact(0) = 1.
double survival_exact(int n);

struct KernelOptions {
  double h = 0.0625;           // half-line node spacing (closed Simpson grid)
  double tap_halfwidth = 7.0;  // increment density truncated at |u| <= this
  double height_mult = 4.0;    // active height a + height_mult*sqrt(n) + pad
  double height_pad = 8.0;
};

// Tables of f_n^a(x, y): the density at y in [0, a] of the walk started at
// x in [0, a] whose steps 1..n-1 all lie strictly above a. Values are stored
// on the extended strip grid {0, midpoints of [0,a], a}; for a = 0 the grid
// degenerates to the single point {0}.
struct KernelTable {
  double a = 0.0;
  int M = 0;        // strip midpoint count (0 when a == 0)
  int n_max = 0;
  int L = 0;        // extended point count: M + 2, or 1 when a == 0
  Grid grid;        // valid when a > 0
  std::vector<double> xs;       // L evaluation points
  std::vector<double> values;   // [n-1][i][j], row-major, size n_max*L*L
  std::vector<double> tail_c;   // [i][j]: f_n ~ C n^{-3/2} beyond n_max
  KernelOptions opts;

  double value(int n, int i, int j) const {
    return values[(static_cast<std::size_t>(n) - 1) * L * L +
                  static_cast<std::size_t>(i) * L + j];
  }
  // Tail-extrapolated evaluation for any n >= 1.
  double eval(std::int64_t n, int i, int j) const;
  double tail(int i, int j) const { return tail_c[static_cast<std::size_t>(i) * L + j]; }

  int index_zero() const { return 0; }
  int index_a() const { return L - 1; }
  int index_mid(int i) const { return a > 0.0 ? 1 + i : 0; }
};

// Builds the table by iterating the half-line transfer integral with closed
// composite-Simpson quadrature on [a, a + height], height growing like
// height_mult*sqrt(n) + pad (returning-excursion maximum bound keeps the
// truncation error below ~1e-12 relative at the default multiplier).
// Throws std::invalid_argument for a < 0, n_max < 1, or M < 1 with a > 0.
KernelTable transfer_kernel(const IncrementModel& model, double a, int M,
                            int n_max, const KernelOptions& opts = {});

// Pointer to the M midpoint columns of row (t, idx) of the table; for
// t > n_max the fitted tail row is returned and *scale picks up t^{-3/2}.
inline const double* kernel_row_mid(const KernelTable& kt, int t, int idx,
                                    double* scale) {
  const int L = kt.L;
  if (t <= kt.n_max) {
    return kt.values.data() +
           (static_cast<std::size_t>(t - 1) * L + idx) * L + 1;
  }
  *scale *= std::pow(static_cast<double>(t), -1.5);
  return kt.tail_c.data() + static_cast<std::size_t>(idx) * L + 1;
}

// P^a_x(n) = P_x(S_1 > a, ..., S_n > a) on the same extended grid.
struct SurvivalTable {
  double a = 0.0;
  int M = 0;
  int n_max = 0;
  int L = 0;
  Grid grid;
  std::vector<double> xs;
  std::vector<double> values;  // [n-1][i], size n_max*L
  std::vector<double> tail_c;  // [i]: P ~ c n^{-1/2} beyond n_max

  double value(int n, int i) const {
    return values[(static_cast<std::size_t>(n) - 1) * L + i];
  }
  double eval(std::int64_t n, int i) const;  // value or tail model; n = 0 -> 1
  int index_zero() const { return 0; }
  int index_a() const { return L - 1; }
  int index_mid(int i) const { return a > 0.0 ? 1 + i : 0; }
};

// Survival DP on the complementary probability (absorption deficiency),
// which decays at height ~sqrt(2 log(1/eps) n); the active height uses
// multiplier 7 internally regardless of opts.height_mult.
SurvivalTable survival(const IncrementModel& model, double a, int M, int n_max,
                       const KernelOptions& opts = {});

// Monte Carlo estimate of C^a(x) = P(H_1 >= a - x), H_1 the first strictly
// ascending ladder height of the walk. Episodes longer than step_cap are
// restarted (estimate is conditioned on ladder epoch <= step_cap; the
// conditioning defect is ~P(T_1 > cap) ~ 0.56/sqrt(cap)).
struct LadderEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t restarts = 0;  // episodes discarded at the cap
};
LadderEstimate ladder_constant(const IncrementModel& model, double a, double x,
                               std::int64_t samples, RngStream& rng,
                               std::int64_t step_cap = 1000000);

// Independent oracle: n-fold iterated integral with composite Gauss-Legendre
// panels on a fine fixed grid. n <= 4 only (throws std::invalid_argument).
double oracle_fn_bruteforce(const IncrementModel& model, double a, double x,
                            double y, int n);

}  // namespace swlab
