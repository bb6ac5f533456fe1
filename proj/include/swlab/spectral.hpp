#pragma once

#include <vector>

#include "swlab/kernels.hpp"

namespace swlab {

// Discretized resolvent kernel b_lambda(x, y) = sum_n e^{-lambda n} f_n^a(x,y)
// on the strip midpoint grid, with the n > n_max remainder closed by the
// fitted tail coefficient and the exact polylog tail sum.
struct ResolventKernel {
  double lambda = 0.0;
  double a = 0.0;
  int M = 0;
  double w = 0.0;
  std::vector<double> b;  // row-major M x M, midpoints only
  double hs_value = 0.0;  // w^2 sum b^2 (discrete Hilbert-Schmidt square)
  double hs_bound = 0.0;  // (c a Li_{3/2}(lambda))^2 with c = sup n^{3/2} f_n

  double at(int i, int j) const { return b[static_cast<size_t>(i) * M + j]; }
};

ResolventKernel build_resolvent(const KernelTable& table, double lambda);

// Leading eigenpair of the positive symmetric operator (K v)(x_i) =
// w sum_j b(x_i, x_j) v(x_j), by power iteration with Rayleigh quotient.
// V is entrywise positive and normalized so w sum V^2 = 1. residual is
// ||K V - delta V||_w / delta.
struct SpectralResult {
  double lambda = 0.0;
  double delta = 0.0;
  std::vector<double> V;
  double residual = 0.0;
  int iterations = 0;
};

SpectralResult leading_eigen(const ResolventKernel& kernel,
                             double tol = 1e-12, int max_iter = 100000);

// Strip critical point beta_c(a) = -log delta_a(0).
double critical_beta_strip(const KernelTable& table);

// Free energy F(beta): 0 for beta <= beta_c(a); otherwise the unique
// lambda > 0 with delta_a(lambda) = e^{-beta}, found by bracketing bisection
// to lambda_tol. The returned root satisfies |delta - e^{-beta}| <= residual
// tolerance checked by callers.
double free_energy(const KernelTable& table, double beta,
                   double lambda_tol = 1e-12);

}  // namespace swlab
