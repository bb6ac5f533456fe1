#pragma once

#include <cstdint>
#include <vector>

#include "swlab/kernels.hpp"
#include "swlab/pinning.hpp"

namespace swlab {

// Reference renewal system: inter-arrival law q(n) = n^{-3/2} / zeta(3/2),
// reweighted by e^{(beta - beta_c) |A|}.
//
//   Zc(N) = sum over renewal configs ending at N,   Zc(0) = 1
//   Zf(N) = sum_{t=0..N} Zc(t) P(N - t)             (t = 0: no-return term)
//
// with P(n) the exact no-return probability of the simple reflection walk.
// All tables are stored in logs; at N = 0 both logs are 0.
struct RenewalTables {
  double beta = 0.0;
  int N = 0;
  std::vector<double> log_q;   // [1..N], index 0 unused
  std::vector<double> log_p;   // log P(n), [0..N]
  std::vector<double> log_zc;  // [0..N]
  std::vector<double> log_zf;  // [0..N]
};

RenewalTables renewal_tables(double beta, int N);

// Tail mass Q(n) = sum_{t > n} q(t); Q(0) = 1.
double renewal_gap_tail(int n);

// Strip transfer-operator partition tables. Contacts live on the midpoint
// grid of [0, a]; the walk starts at x = 0 (backward index 0). Row m of a
// backward table is the partition over the remaining m steps given the
// current position; the scaled representation hat * e^{L[m]} keeps
// supercritical growth inside double range.
struct StripPartitionTable {
  double a = 0.0;
  int M = 0;
  int N = 0;
  double w = 0.0;
  Grid grid;
  std::vector<double> phi;       // phi(x_j) at midpoints, size M
  std::vector<double> wexp_phi;  // w e^{phi_j}

  // forward: log Wc(t, j) = log-weight of configs whose last contact is
  // (t, x_j); t in [1, N], row-major (N+1) x M with row 0 unused.
  std::vector<double> log_wc;

  // backward, indexed by idx in [0, M]: idx 0 is x = 0, idx i is midpoint
  // i-1. log_z*(m, idx) = log of the remaining-partition over m more steps.
  std::vector<double> log_zc_rem;  // (N+1) x (M+1)
  std::vector<double> log_zf_rem;
  std::vector<double> lc;      // row max of log_zc_rem, size N+1
  std::vector<double> lf;      // row max of log_zf_rem
  std::vector<double> zc_hat;  // exp(log_zc_rem - lc[m])
  std::vector<double> zf_hat;

  std::vector<double> surv;  // P^a_{x_idx}(m), (N+1) x (M+1)

  double log_zc_total = 0.0;  // = log_zc_rem(N, 0)
  double log_zf_total = 0.0;
  double log_zc_total_forward = 0.0;  // independent forward accumulation
  double log_zf_total_forward = 0.0;

  double log_zc(int m, int idx) const {
    return log_zc_rem[static_cast<size_t>(m) * (M + 1) + idx];
  }
  double log_zf(int m, int idx) const {
    return log_zf_rem[static_cast<size_t>(m) * (M + 1) + idx];
  }
  double position(int idx) const { return idx == 0 ? 0.0 : grid.x[idx - 1]; }
};

// Builds both partition tables. Requires table.a == survival.a, matching M,
// survival.n_max >= N, and a work budget N^2 M^2 / 2 below ~4e10 MACs.
StripPartitionTable strip_partition(const PinningFunction& pinning,
                                    const KernelTable& table,
                                    const SurvivalTable& survival, int N);

// Log-density of a contact *time* set under the strip model (positions
// integrated out) and under the reference renewal at the given beta.
// A must start at 0, be strictly increasing, end <= N; constrained sets must
// end at N exactly. Returns log p~(A) - log p(A).
struct DensityRatio {
  double log_strip = 0.0;    // log p~^alpha(A)
  double log_renewal = 0.0;  // log p^alpha_beta(A)
  double log_ratio = 0.0;
};

DensityRatio contact_set_density_ratio(const StripPartitionTable& strip,
                                       const KernelTable& table,
                                       const RenewalTables& renewal,
                                       const std::vector<int>& times,
                                       char alpha);

namespace oracle {

// Subset-enumeration partition functions, O(2^N); N <= 20 enforced.
double renewal_partition_enum(double beta, int N, char alpha);

// Probabilities of every contact-time set under the renewal model, indexed
// by bitmask over {1..N} (bit k-1 <=> contact at time k).
std::vector<double> renewal_set_probs_enum(double beta, int N, char alpha);

// Same pair for the strip model on the midpoint grid (positions summed out
// with weight w at every contact).
struct StripEnumResult {
  double zc = 0.0;
  double zf = 0.0;
};
StripEnumResult strip_partition_enum(const PinningFunction& pinning,
                                     const KernelTable& table,
                                     const SurvivalTable& survival, int N);
std::vector<double> strip_set_probs_enum(const PinningFunction& pinning,
                                         const KernelTable& table,
                                         const SurvivalTable& survival, int N,
                                         char alpha);

}  // namespace oracle

}  // namespace swlab
