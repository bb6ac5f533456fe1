#pragma once

#include <cstdint>

namespace swlab {

// zeta(3/2) to full double precision (Euler-Maclaurin accelerated).
double zeta_three_halves();

// T_lambda(N) = sum_{n > N} exp(-lambda n) n^{-3/2}, lambda >= 0.
// Exact at lambda = 0 (Hurwitz tail); throws std::domain_error for lambda < 0.
double power_tail_sum(double lambda, std::int64_t N);

// sum_{n >= 1} exp(-lambda n) n^{-3/2}  ( = zeta(3/2) at lambda = 0 ).
double polylog_three_halves(double lambda);

// beta_c of the reference pinning model: exp(-beta_c) = zeta(3/2)/sqrt(2 pi).
double beta_c_exact();

}  // namespace swlab
