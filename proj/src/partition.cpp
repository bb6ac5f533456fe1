#include "swlab/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "swlab/series.hpp"

namespace swlab {
namespace {

constexpr int kMaxIdx = 72;  // matches the kernel lane cap (M <= 62)

void require_compatible(const KernelTable& table, const SurvivalTable& surv,
                        int N) {
  if (table.a <= 0.0) {
    throw std::invalid_argument("strip_partition: needs a > 0 kernel table");
  }
  if (std::abs(table.a - surv.a) > 1e-12 || table.M != surv.M) {
    throw std::invalid_argument("strip_partition: kernel/survival mismatch");
  }
  if (N < 1) throw std::invalid_argument("strip_partition: N must be >= 1");
  if (surv.n_max < N) {
    throw std::invalid_argument("strip_partition: survival table too short");
  }
  const double macs =
      1.5 * 0.5 * static_cast<double>(N) * N * (table.M + 1) * (table.M + 1);
  if (macs > 1e11) {
    throw std::invalid_argument(
        "strip_partition: N^2 M^2 work budget exceeded; reduce N or M");
  }
}

}  // namespace

RenewalTables renewal_tables(double beta, int N) {
  if (N < 0) throw std::invalid_argument("renewal_tables: N must be >= 0");
  RenewalTables rt;
  rt.beta = beta;
  rt.N = N;
  const double log_zeta = std::log(zeta_three_halves());
  const double shift = beta - beta_c_exact();

  rt.log_q.assign(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    rt.log_q[n] = -1.5 * std::log(static_cast<double>(n)) - log_zeta;
  }
  rt.log_p.assign(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    // P(n) = P(n-1) * (2n-1) / (2n)
    rt.log_p[n] = rt.log_p[n - 1] + std::log((2.0 * n - 1.0) / (2.0 * n));
  }

  rt.log_zc.assign(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    double mx = -HUGE_VAL;
    for (int t = 1; t <= n; ++t) {
      mx = std::max(mx, rt.log_q[t] + rt.log_zc[n - t]);
    }
    double acc = 0.0;
    for (int t = 1; t <= n; ++t) {
      acc += std::exp(rt.log_q[t] + rt.log_zc[n - t] - mx);
    }
    rt.log_zc[n] = shift + mx + std::log(acc);
  }

  rt.log_zf.assign(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    double mx = -HUGE_VAL;
    for (int t = 0; t <= n; ++t) {
      mx = std::max(mx, rt.log_zc[t] + rt.log_p[n - t]);
    }
    double acc = 0.0;
    for (int t = 0; t <= n; ++t) {
      acc += std::exp(rt.log_zc[t] + rt.log_p[n - t] - mx);
    }
    rt.log_zf[n] = mx + std::log(acc);
  }
  return rt;
}

double renewal_gap_tail(int n) {
  if (n < 0) throw std::invalid_argument("renewal_gap_tail: n must be >= 0");
  return power_tail_sum(0.0, n) / zeta_three_halves();
}

StripPartitionTable strip_partition(const PinningFunction& pinning,
                                    const KernelTable& table,
                                    const SurvivalTable& survival, int N) {
  require_compatible(table, survival, N);
  if (std::abs(pinning.a - table.a) > 1e-12) {
    throw std::invalid_argument("strip_partition: pinning width mismatch");
  }
  const int M = table.M;
  const int Mi = M + 1;
  if (Mi > kMaxIdx) throw std::invalid_argument("strip_partition: M too large");

  StripPartitionTable sp;
  sp.a = table.a;
  sp.M = M;
  sp.N = N;
  sp.grid = table.grid;
  sp.w = table.grid.w;
  sp.phi.resize(M);
  sp.wexp_phi.resize(M);
  for (int j = 0; j < M; ++j) {
    sp.phi[j] = pinning.eval(sp.grid.x[j]);
    sp.wexp_phi[j] = sp.w * std::exp(sp.phi[j]);
  }

  sp.surv.assign(static_cast<size_t>(N + 1) * Mi, 0.0);
  for (int m = 0; m <= N; ++m) {
    for (int idx = 0; idx <= M; ++idx) {
      sp.surv[static_cast<size_t>(m) * Mi + idx] = survival.eval(m, idx);
    }
  }

  // ---- backward tables -------------------------------------------------
  // One pass builds both: the free table only adds the survival stop term.
  for (int pass = 0; pass < 2; ++pass) {
    const bool free_pass = (pass == 1);
    std::vector<double>& log_z = free_pass ? sp.log_zf_rem : sp.log_zc_rem;
    std::vector<double>& lrow = free_pass ? sp.lf : sp.lc;
    std::vector<double>& hat = free_pass ? sp.zf_hat : sp.zc_hat;
    log_z.assign(static_cast<size_t>(N + 1) * Mi, 0.0);
    lrow.assign(N + 1, 0.0);
    hat.assign(static_cast<size_t>(N + 1) * Mi, 1.0);
    // u[s*M + j] = w e^{phi_j} hat(s, midpoint j)
    std::vector<double> u(static_cast<size_t>(N + 1) * M);
    for (int j = 0; j < M; ++j) u[j] = sp.wexp_phi[j];

    double ref = 0.0;  // running prefix max of lrow
    for (int m = 1; m <= N; ++m) {
      ref = std::max(ref, lrow[m - 1]);
      std::array<double, kMaxIdx> acc{};
      if (free_pass) {
        const double sscale = std::exp(-ref);
        for (int idx = 0; idx <= M; ++idx) {
          acc[idx] = sscale * sp.surv[static_cast<size_t>(m) * Mi + idx];
        }
      }
      for (int t = 1; t <= m; ++t) {
        const int s = m - t;
        double scale = std::exp(lrow[s] - ref);
        if (scale < 1e-290) continue;
        const double* row0 = kernel_row_mid(table, t, 0, &scale);
        const double* us = &u[static_cast<size_t>(s) * M];
        const int L = table.L;
        for (int idx = 0; idx <= M; ++idx) {
          const double* row = row0 + static_cast<size_t>(idx) * L;
          double dot = 0.0;
          for (int j = 0; j < M; ++j) dot += row[j] * us[j];
          acc[idx] += scale * dot;
        }
      }
      double amax = 0.0;
      for (int idx = 0; idx <= M; ++idx) amax = std::max(amax, acc[idx]);
      const size_t base = static_cast<size_t>(m) * Mi;
      for (int idx = 0; idx <= M; ++idx) {
        log_z[base + idx] = ref + std::log(acc[idx]);
        hat[base + idx] = acc[idx] / amax;
      }
      lrow[m] = ref + std::log(amax);
      for (int j = 0; j < M; ++j) {
        u[static_cast<size_t>(m) * M + j] =
            sp.wexp_phi[j] * hat[base + 1 + j];
      }
    }
  }
  sp.log_zc_total = sp.log_zc(N, 0);
  sp.log_zf_total = sp.log_zf(N, 0);

  // ---- forward table -----------------------------------------------------
  sp.log_wc.assign(static_cast<size_t>(N + 1) * M, -HUGE_VAL);
  std::vector<double> lw(N + 1, -HUGE_VAL);
  std::vector<double> wc_hat(static_cast<size_t>(N + 1) * M, 0.0);
  std::vector<double> uw(static_cast<size_t>(N + 1) * M, 0.0);
  std::vector<double> exp_phi(M);
  for (int j = 0; j < M; ++j) exp_phi[j] = std::exp(sp.phi[j]);

  double prefw = -HUGE_VAL;
  for (int t = 1; t <= N; ++t) {
    if (t >= 2) prefw = std::max(prefw, lw[t - 1]);
    double dscale = 1.0;
    const double* drow = kernel_row_mid(table, t, 0, &dscale);
    double dmax = 0.0;
    for (int j = 0; j < M; ++j) dmax = std::max(dmax, dscale * drow[j]);
    const double refw = std::max(prefw, std::log(dmax));
    std::array<double, kMaxIdx> acc{};
    const double dfac = dscale * std::exp(-refw);
    for (int j = 0; j < M; ++j) acc[j] = dfac * drow[j];
    for (int s = 1; s < t; ++s) {
      double scale = std::exp(lw[s] - refw);
      if (scale < 1e-290) continue;
      const double* row0 = kernel_row_mid(table, t - s, 0, &scale);
      const double* us = &uw[static_cast<size_t>(s) * M];
      const int L = table.L;
      for (int j = 0; j < M; ++j) {
        // f(x_i -> y_j) = f(y_j -> x_i): walk row 1+j for contiguity.
        const double* row = row0 + static_cast<size_t>(1 + j) * L;
        double dot = 0.0;
        for (int i = 0; i < M; ++i) dot += row[i] * us[i];
        acc[j] += scale * dot;
      }
    }
    double emax = 0.0;
    for (int j = 0; j < M; ++j) emax = std::max(emax, acc[j] * exp_phi[j]);
    lw[t] = refw + std::log(emax);
    const size_t base = static_cast<size_t>(t) * M;
    for (int j = 0; j < M; ++j) {
      const double e = acc[j] * exp_phi[j];
      sp.log_wc[base + j] = refw + std::log(e);
      wc_hat[base + j] = e / emax;
      uw[base + j] = sp.w * wc_hat[base + j];
    }
  }

  {
    double s = 0.0;
    const size_t base = static_cast<size_t>(N) * M;
    for (int j = 0; j < M; ++j) s += sp.w * wc_hat[base + j];
    sp.log_zc_total_forward = lw[N] + std::log(s);

    double ref = 0.0;  // covers the no-contact term exp(0) * P(N)
    for (int t = 1; t <= N; ++t) ref = std::max(ref, lw[t]);
    double acc = std::exp(-ref) * sp.surv[static_cast<size_t>(N) * Mi];
    for (int t = 1; t <= N; ++t) {
      const double scale = std::exp(lw[t] - ref);
      if (scale < 1e-290) continue;
      const double* sv = &sp.surv[static_cast<size_t>(N - t) * Mi];
      double dot = 0.0;
      for (int j = 0; j < M; ++j) {
        dot += sp.w * wc_hat[static_cast<size_t>(t) * M + j] * sv[1 + j];
      }
      acc += scale * dot;
    }
    sp.log_zf_total_forward = ref + std::log(acc);
  }
  return sp;
}

DensityRatio contact_set_density_ratio(const StripPartitionTable& strip,
                                       const KernelTable& table,
                                       const RenewalTables& renewal,
                                       const std::vector<int>& times,
                                       char alpha) {
  if (alpha != 'c' && alpha != 'f') {
    throw std::invalid_argument("density_ratio: alpha must be 'c' or 'f'");
  }
  if (times.empty() || times.front() != 0) {
    throw std::invalid_argument("density_ratio: contact set must start at 0");
  }
  for (size_t k = 1; k < times.size(); ++k) {
    if (times[k] <= times[k - 1]) {
      throw std::invalid_argument("density_ratio: times must increase");
    }
  }
  const int N = strip.N;
  if (renewal.N != N) {
    throw std::invalid_argument("density_ratio: renewal horizon mismatch");
  }
  if (times.back() > N) {
    throw std::invalid_argument("density_ratio: time beyond horizon");
  }
  if (alpha == 'c' && times.back() != N) {
    throw std::invalid_argument(
        "density_ratio: constrained set must contain N");
  }
  const int M = strip.M;
  const int Mi = M + 1;
  const int k = static_cast<int>(times.size()) - 1;

  DensityRatio out;
  // Renewal side.
  {
    double lp = k * (renewal.beta - beta_c_exact());
    for (int g = 1; g <= k; ++g) {
      lp += renewal.log_q[times[g] - times[g - 1]];
    }
    if (alpha == 'f') {
      lp += renewal.log_p[N - times.back()] - renewal.log_zf[N];
    } else {
      lp -= renewal.log_zc[N];
    }
    out.log_renewal = lp;
  }
  // Strip side: chain over contact positions, log-scaled.
  {
    double lp;
    if (k == 0) {
      lp = std::log(strip.surv[static_cast<size_t>(N) * Mi]) -
           strip.log_zf_total;
    } else {
      std::vector<double> v(M), nv(M);
      double off = 0.0;
      {
        double scale = 1.0;
        const double* row = kernel_row_mid(table, times[1], 0, &scale);
        for (int j = 0; j < M; ++j) {
          v[j] = scale * row[j] * std::exp(strip.phi[j]);
        }
      }
      for (int g = 2; g <= k; ++g) {
        const int gap = times[g] - times[g - 1];
        double scale = strip.w;
        const double* row0 = kernel_row_mid(table, gap, 0, &scale);
        for (int j = 0; j < M; ++j) {
          const double* row = row0 + static_cast<size_t>(1 + j) * table.L;
          double dot = 0.0;
          for (int i = 0; i < M; ++i) dot += row[i] * v[i];
          nv[j] = scale * dot * std::exp(strip.phi[j]);
        }
        std::swap(v, nv);
        const double vm = *std::max_element(v.begin(), v.end());
        off += std::log(vm);
        for (double& x : v) x /= vm;
      }
      double tailw = 0.0;
      if (alpha == 'c') {
        for (int j = 0; j < M; ++j) tailw += strip.w * v[j];
        lp = off + std::log(tailw) - strip.log_zc_total;
      } else {
        const double* sv =
            &strip.surv[static_cast<size_t>(N - times.back()) * Mi];
        for (int j = 0; j < M; ++j) tailw += strip.w * v[j] * sv[1 + j];
        lp = off + std::log(tailw) - strip.log_zf_total;
      }
    }
    out.log_strip = lp;
  }
  out.log_ratio = out.log_strip - out.log_renewal;
  return out;
}

namespace oracle {
namespace {

void require_enum(int N) {
  if (N < 1 || N > 20) {
    throw std::invalid_argument("enumeration oracle: need 1 <= N <= 20");
  }
}

double renewal_weight(double beta, int N, char alpha, unsigned mask) {
  const double shift = beta - beta_c_exact();
  const double zeta = zeta_three_halves();
  double w = 1.0;
  int last = 0;
  int count = 0;
  for (int t = 1; t <= N; ++t) {
    if (mask & (1u << (t - 1))) {
      const int gap = t - last;
      w *= std::exp(shift) * std::pow(static_cast<double>(gap), -1.5) / zeta;
      last = t;
      ++count;
    }
  }
  (void)count;
  if (alpha == 'c') {
    if (!(mask & (1u << (N - 1)))) return 0.0;
    return w;
  }
  return w * survival_exact(N - last);
}

// Chain weight of a specific contact-time set under the strip model,
// positions summed over the midpoint grid.
double strip_weight(const PinningFunction& pinning, const KernelTable& kt,
                    const SurvivalTable& st, int N, char alpha,
                    unsigned mask) {
  const int M = kt.M;
  std::vector<int> times{0};
  for (int t = 1; t <= N; ++t) {
    if (mask & (1u << (t - 1))) times.push_back(t);
  }
  if (alpha == 'c' && times.back() != N) return 0.0;
  if (times.size() == 1) {
    return alpha == 'c' ? 0.0 : st.eval(N, st.index_zero());
  }
  std::vector<double> v(M), nv(M);
  for (int j = 0; j < M; ++j) {
    v[j] = kt.eval(times[1], kt.index_zero(), kt.index_mid(j)) *
           std::exp(pinning.eval(kt.grid.x[j]));
  }
  for (size_t g = 2; g < times.size(); ++g) {
    const int gap = times[g] - times[g - 1];
    for (int j = 0; j < M; ++j) {
      double dot = 0.0;
      for (int i = 0; i < M; ++i) {
        dot += kt.eval(gap, kt.index_mid(i), kt.index_mid(j)) * v[i];
      }
      nv[j] = kt.grid.w * dot * std::exp(pinning.eval(kt.grid.x[j]));
    }
    std::swap(v, nv);
  }
  double total = 0.0;
  const int rest = N - times.back();
  for (int j = 0; j < M; ++j) {
    const double stop =
        alpha == 'c' ? 1.0 : st.eval(rest, st.index_mid(j));
    total += kt.grid.w * v[j] * stop;
  }
  return total;
}

}  // namespace

double renewal_partition_enum(double beta, int N, char alpha) {
  require_enum(N);
  double z = alpha == 'f' ? renewal_weight(beta, N, alpha, 0u) : 0.0;
  for (unsigned mask = 1; mask < (1u << N); ++mask) {
    z += renewal_weight(beta, N, alpha, mask);
  }
  return z;
}

std::vector<double> renewal_set_probs_enum(double beta, int N, char alpha) {
  require_enum(N);
  std::vector<double> p(1u << N, 0.0);
  double z = 0.0;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    p[mask] = renewal_weight(beta, N, alpha, mask);
    z += p[mask];
  }
  for (double& x : p) x /= z;
  return p;
}

StripEnumResult strip_partition_enum(const PinningFunction& pinning,
                                     const KernelTable& table,
                                     const SurvivalTable& survival, int N) {
  require_enum(N);
  StripEnumResult out;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    out.zc += strip_weight(pinning, table, survival, N, 'c', mask);
    out.zf += strip_weight(pinning, table, survival, N, 'f', mask);
  }
  return out;
}

std::vector<double> strip_set_probs_enum(const PinningFunction& pinning,
                                         const KernelTable& table,
                                         const SurvivalTable& survival, int N,
                                         char alpha) {
  require_enum(N);
  std::vector<double> p(1u << N, 0.0);
  double z = 0.0;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    p[mask] = strip_weight(pinning, table, survival, N, alpha, mask);
    z += p[mask];
  }
  for (double& x : p) x /= z;
  return p;
}

}  // namespace oracle
}  // namespace swlab
