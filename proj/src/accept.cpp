#include "swlab/accept.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "swlab/csv.hpp"
#include "swlab/kernels.hpp"
#include "swlab/model.hpp"
#include "swlab/partition.hpp"
#include "swlab/pinning.hpp"
#include "swlab/rng.hpp"
#include "swlab/sampler.hpp"
#include "swlab/series.hpp"
#include "swlab/spectral.hpp"
#include "swlab/stats.hpp"
#include "swlab/threads.hpp"

namespace swlab::accept {
namespace {

constexpr std::uint64_t kSeed = 20260816ull;

// Disjoint stream ids: criterion id in the high word, phase blocks of 2^20
// below it, so no two draws in the whole suite share a stream.
std::uint64_t stream_id(int criterion, int phase, std::int64_t k) {
  return (static_cast<std::uint64_t>(criterion) << 32) +
         (static_cast<std::uint64_t>(phase) << 20) +
         static_cast<std::uint64_t>(k);
}

bool relation_holds(double stat, const std::string& rel, double thr) {
  if (rel == "<") return stat < thr;
  if (rel == "<=") return stat <= thr;
  if (rel == ">") return stat > thr;
  if (rel == ">=") return stat >= thr;
  throw std::logic_error("unknown relation " + rel);
}

void add_check(std::vector<CheckLine>& lines, std::string name, long long N,
               long long M, double stat, const std::string& rel, double thr) {
  CheckLine c;
  c.name = std::move(name);
  c.N = N;
  c.M = M;
  c.statistic = stat;
  c.threshold = thr;
  c.relation = rel;
  c.pass = relation_holds(stat, rel, thr);
  lines.push_back(std::move(c));
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Condition (A) score of the discretized model: the DP integrates contacts
// with the midpoint rule, so the sandwich constants must use the same
// measure, w sum_j e^{phi(x_j)}, not the continuum integral.
double discrete_condition_a_score(const PinningFunction& p, const Grid& g) {
  long double s = 0.0L;
  for (int j = 0; j < g.M; ++j) s += g.w * std::exp(p.eval(g.x[j]));
  return (std::log(static_cast<double>(s)) - beta_c_exact()) / p.a;
}

// ---------------------------------------------------------------------------
// 1. Gaussian closed form at a = 0.

void criterion_closed_form(std::vector<CheckLine>& lines) {
  const auto t0 = std::chrono::steady_clock::now();
  const IncrementModel model = gaussian_model();
  const int n_max = 64;
  const KernelTable kt = transfer_kernel(model, 0.0, 0, n_max);

  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    worst = std::max(worst,
                     std::abs(kt.value(n, 0, 0) / closed_form_fn(n) - 1.0));
  }
  add_check(lines, "fn_max_rel_err", n_max, 0, worst, "<", 1e-3);

  const double f2_oracle = 1.0 / (4.0 * std::sqrt(std::numbers::pi));
  add_check(lines, "f2_vs_quadrature_oracle", 2, 0,
            std::abs(kt.value(2, 0, 0) / f2_oracle - 1.0), "<", 1e-6);

  add_check(lines, "runtime_seconds", n_max, 0, elapsed_s(t0), "<", 30.0);
}

// ---------------------------------------------------------------------------
// 2. Kernel lemma suite over a in {0.05, 0.1, 0.2, 0.4}, n <= 64.
//
// Symmetry and the boundary identity hold for every n >= 1; monotonicity in
// (x, y) starts at n = 2 (the n = 1 row is the bare one-step density, which
// peaks at y = x and is constant in a, so its ratio row is identically 1).

struct KernelSweep {
  std::vector<double> as;
  int n_max = 0;
  // ratio[k][n] = f_n^a(0,0) / f_n for as[k]; index n is 1-based.
  std::vector<std::vector<double>> ratio;
  double sym = 0.0;        // max |f(x,y) - f(y,x)|
  double mono = 0.0;       // max one-sided decrease along x or y, n >= 2
  double boundary = 0.0;   // max rel err of f_n^a(a,a) vs f_n
  double trend = 0.0;      // max increase of ratio along increasing a
};

KernelSweep kernel_sweep(const KernelOptions& opts) {
  KernelSweep s;
  s.as = {0.05, 0.1, 0.2, 0.4};
  s.n_max = 64;
  const int M = 8;
  const IncrementModel model = gaussian_model();
  s.ratio.assign(s.as.size(), std::vector<double>(s.n_max + 1, 0.0));

  for (std::size_t k = 0; k < s.as.size(); ++k) {
    const KernelTable kt = transfer_kernel(model, s.as[k], M, s.n_max, opts);
    const int L = kt.L;
    for (int n = 1; n <= s.n_max; ++n) {
      const double fn = closed_form_fn(n);
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          s.sym = std::max(
              s.sym, std::abs(kt.value(n, i, j) - kt.value(n, j, i)));
          if (n >= 2 && j + 1 < L) {
            s.mono = std::max(s.mono,
                              kt.value(n, i, j) - kt.value(n, i, j + 1));
          }
          if (n >= 2 && i + 1 < L) {
            s.mono = std::max(s.mono,
                              kt.value(n, i, j) - kt.value(n, i + 1, j));
          }
        }
      }
      s.boundary = std::max(
          s.boundary, std::abs(kt.value(n, L - 1, L - 1) / fn - 1.0));
      s.ratio[k][n] = kt.value(n, 0, 0) / fn;
    }
  }
  for (std::size_t k = 0; k + 1 < s.as.size(); ++k) {
    for (int n = 1; n <= s.n_max; ++n) {
      s.trend = std::max(s.trend, s.ratio[k + 1][n] - s.ratio[k][n]);
    }
  }
  return s;
}

void criterion_kernel_lemmas(std::vector<CheckLine>& lines) {
  const auto t0 = std::chrono::steady_clock::now();
  const KernelSweep s = kernel_sweep(KernelOptions{});
  add_check(lines, "symmetry_max_abs", s.n_max, 8, s.sym, "<", 1e-10);
  add_check(lines, "monotonicity_max_drop", s.n_max, 8, s.mono, "<", 1e-9);
  add_check(lines, "boundary_identity_rel_err", s.n_max, 8, s.boundary, "<",
            1e-4);
  add_check(lines, "ratio_increase_along_a", s.n_max, 8, s.trend, "<", 1e-9);
  add_check(lines, "runtime_seconds", s.n_max, 8, elapsed_s(t0), "<", 120.0);
}

// ---------------------------------------------------------------------------
// 3. Ratio-bound fit: positive (c0, c0~, c1, c1~) with
//    exp(-c0 a - c0~ a^2) <= f_n^a/f_n <= exp(-c1 a + c1~ a^2)
// over the criterion-2 grid. The n = 1 rows force c1 <= c1~ * min(a): the
// ratio there is exactly 1, so the upper bound must be >= 1 on the grid.
// The fit itself uses n >= 2 (least squares on the log envelopes, then
// uniformized so the cover is exact); stability is under quadrature
// refinement h -> h/2, since the envelopes do not depend on the strip grid.

struct RatioFit {
  double c0 = 0.0, c0t = 0.0, c1 = 0.0, c1t = 0.0;
  double violation = 0.0;  // max signed sandwich violation, full grid n >= 1
};

std::pair<double, double> least_squares_line(const std::vector<double>& x,
                                             const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  return {intercept, slope};
}

RatioFit fit_ratio_constants(const KernelSweep& s) {
  const std::size_t K = s.as.size();
  std::vector<double> lo(K), up(K);  // -log of min / max ratio over n >= 2
  for (std::size_t k = 0; k < K; ++k) {
    double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
    for (int n = 2; n <= s.n_max; ++n) {
      mn = std::min(mn, s.ratio[k][n]);
      mx = std::max(mx, s.ratio[k][n]);
    }
    lo[k] = -std::log(mn);
    up[k] = -std::log(mx);
  }

  std::vector<double> ylo(K), yup(K);
  for (std::size_t k = 0; k < K; ++k) {
    ylo[k] = lo[k] / s.as[k];
    yup[k] = up[k] / s.as[k];
  }
  RatioFit f;
  // lo(a)/a ~ c0 + c0~ a; up(a)/a ~ c1 - c1~ a.
  f.c0t = std::max(least_squares_line(s.as, ylo).second, 0.01);
  f.c1t = std::max(-least_squares_line(s.as, yup).second, 0.01);
  f.c0 = 0.0;
  f.c1 = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    f.c0 = std::max(f.c0, (lo[k] - f.c0t * s.as[k] * s.as[k]) / s.as[k]);
    f.c1 = std::min(f.c1, (up[k] + f.c1t * s.as[k] * s.as[k]) / s.as[k]);
  }
  const double a_min = *std::min_element(s.as.begin(), s.as.end());
  f.c1t = std::max(f.c1t, f.c1 / a_min * (1.0 + 1e-12));

  for (std::size_t k = 0; k < K; ++k) {
    const double a = s.as[k];
    for (int n = 1; n <= s.n_max; ++n) {
      const double lr = std::log(s.ratio[k][n]);
      f.violation = std::max(f.violation, (-f.c0 * a - f.c0t * a * a) - lr);
      f.violation = std::max(f.violation, lr - (-f.c1 * a + f.c1t * a * a));
    }
  }
  return f;
}

void criterion_ratio_fit(std::vector<CheckLine>& lines) {
  const KernelSweep base = kernel_sweep(KernelOptions{});
  const RatioFit f = fit_ratio_constants(base);

  KernelOptions fine;
  fine.h = 0.03125;
  const RatioFit g = fit_ratio_constants(kernel_sweep(fine));

  add_check(lines, "c0", 64, 8, f.c0, ">", 0.0);
  add_check(lines, "c0_tilde", 64, 8, f.c0t, ">", 0.0);
  add_check(lines, "c1", 64, 8, f.c1, ">", 0.0);
  add_check(lines, "c1_tilde", 64, 8, f.c1t, ">", 0.0);
  add_check(lines, "sandwich_violation_log", 64, 8, f.violation, "<", 1e-9);
  const double drift =
      std::max({std::abs(g.c0 / f.c0 - 1.0), std::abs(g.c0t / f.c0t - 1.0),
                std::abs(g.c1 / f.c1 - 1.0), std::abs(g.c1t / f.c1t - 1.0)});
  add_check(lines, "refinement_max_rel_change", 64, 8, drift, "<", 0.2);
}

// ---------------------------------------------------------------------------
// 4. Critical-point bounds: gap(a) = log a + beta_c(a) - beta_c over
//    a in {0.05, 0.1, 0.2, 0.3, 0.4}, grid 32, n_max 4096 with tail.

void criterion_critical_point(std::vector<CheckLine>& lines) {
  const auto t0 = std::chrono::steady_clock::now();
  const IncrementModel model = gaussian_model();
  const std::vector<double> as = {0.05, 0.1, 0.2, 0.3, 0.4};
  const int M = 32, n_max = 4096;
  const double bc = beta_c_exact();
  const double ebc = std::exp(bc);  // sqrt(2 pi) / zeta(3/2), exact series

  std::vector<double> gap(as.size()), dev(as.size());
  for (std::size_t k = 0; k < as.size(); ++k) {
    const KernelTable kt = transfer_kernel(model, as[k], M, n_max);
    const double bca = critical_beta_strip(kt);
    gap[k] = std::log(as[k]) + bca - bc;
    dev[k] = std::abs(as[k] * std::exp(bca) - ebc);
  }

  double gap_min = gap[0], c_up = 0.0;
  double d_low = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < as.size(); ++k) {
    gap_min = std::min(gap_min, gap[k]);
    c_up = std::max(c_up, gap[k] / as[k]);
    d_low = std::min(d_low, gap[k] / (as[k] * as[k]));
  }
  double dev_increase = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < as.size(); ++k) {
    dev_increase = std::max(dev_increase, dev[k] - dev[k + 1]);
  }

  add_check(lines, "gap_min", n_max, M, gap_min, ">", 0.0);
  add_check(lines, "gap_over_a_max_C", n_max, M, c_up, ">", 0.0);
  add_check(lines, "gap_over_a2_min_D", n_max, M, d_low, ">", 0.0);
  add_check(lines, "deviation_nonmonotone_excess", n_max, M, dev_increase, "<",
            0.0);
  add_check(lines, "runtime_seconds", n_max, M, elapsed_s(t0), "<", 300.0);
}

// ---------------------------------------------------------------------------
// 5. Partition sandwich at a = 0.2, N <= 256, for the smooth bump and the
//    constant-critical pinning.
//
// With s the (grid-consistent) Condition (A) score and
// C0 = max_n (-log f_n^a/f_n)/a, every contact weight obeys
//   e^{(s - C0) a} q(n) <= w sum_j e^{phi_j} f_n^a(., x_j) <= e^{s a} q(n),
// and the free tail obeys r_min P(m) <= P^a_x(m) <= P(m), so
//   Zc in [Z~c(beta_c + (s - C0) a), Z~c(beta_c + s a)]
//   Zf in [r_min Z~f(beta_c + (s - C0) a), Z~f(beta_c + s a)].
// The single-constant form uses C' = max(s, C0 - s, 0.01) and, on the free
// lower side, the Monte Carlo ladder constant with a 6-sigma margin.

void criterion_sandwich(std::vector<CheckLine>& lines) {
  const IncrementModel model = gaussian_model();
  const double a = 0.2;
  const int M = 16, N = 256;
  const KernelTable kt = transfer_kernel(model, a, M, N);
  const SurvivalTable st = survival(model, a, M, N);
  const double bc = beta_c_exact();
  const double bca = critical_beta_strip(kt);

  // C0 and r_min from the same tables the DP consumes.
  double c0 = 0.0, r_min = 1.0;
  for (int n = 1; n <= N; ++n) {
    c0 = std::max(c0, -std::log(kt.value(n, 0, 0) / closed_form_fn(n)) / a);
    r_min = std::min(r_min, st.value(n, 0) / survival_exact(n));
  }

  RngStream ladder_rng(kSeed, stream_id(5, 0, 0));
  const LadderEstimate lad =
      ladder_constant(model, a, 0.0, 100000, ladder_rng);
  const double c_mc = lad.estimate - 6.0 * lad.std_error;

  const std::vector<PinningFunction> pins = {
      make_smooth_bump_pinning(a), make_constant_pinning(a, bca)};
  const std::vector<std::string> tags = {"bump", "const_critical"};

  double spec_viol = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < pins.size(); ++p) {
    const StripPartitionTable strip = strip_partition(pins[p], kt, st, N);
    const double s = discrete_condition_a_score(pins[p], kt.grid);
    const RenewalTables up = renewal_tables(bc + s * a, N);
    const RenewalTables lo = renewal_tables(bc + (s - c0) * a, N);

    double sharp_viol = -std::numeric_limits<double>::infinity();
    for (int m = 1; m <= N; ++m) {
      const double zc = strip.log_zc(m, 0), zf = strip.log_zf(m, 0);
      sharp_viol = std::max({sharp_viol, zc - up.log_zc[m], lo.log_zc[m] - zc,
                             zf - up.log_zf[m],
                             std::log(r_min) + lo.log_zf[m] - zf});
    }
    add_check(lines, tags[p] + "_sharp_sandwich_violation", N, M, sharp_viol,
              "<", 1e-5);

    const double cp = std::max({s, c0 - s, 0.01});
    const RenewalTables upp = renewal_tables(bc + cp * a, N);
    const RenewalTables low = renewal_tables(bc - cp * a, N);
    for (int m = 1; m <= N; ++m) {
      const double zc = strip.log_zc(m, 0), zf = strip.log_zf(m, 0);
      spec_viol = std::max({spec_viol, zc - upp.log_zc[m], low.log_zc[m] - zc,
                            zf - upp.log_zf[m],
                            std::log(c_mc) + low.log_zf[m] - zf});
    }
  }
  add_check(lines, "single_constant_sandwich_violation", N, M, spec_viol, "<",
            1e-5);
  add_check(lines, "ladder_consistency_sigma", N, 100000,
            (lad.estimate - r_min) / lad.std_error, "<", 6.0);
}

// ---------------------------------------------------------------------------
// 6. Oracle equivalence: recursions and samplers against enumeration.

void criterion_oracles(std::vector<CheckLine>& lines) {
  const IncrementModel model = gaussian_model();
  const double bc = beta_c_exact();

  {  // (a) renewal recursion vs subset enumeration, N = 12.
    const int N = 12;
    double worst = 0.0;
    for (double beta : {bc - 0.25, bc, bc + 0.25}) {
      const RenewalTables rt = renewal_tables(beta, N);
      const double zc = oracle::renewal_partition_enum(beta, N, 'c');
      const double zf = oracle::renewal_partition_enum(beta, N, 'f');
      worst = std::max(worst, std::abs(std::exp(rt.log_zc[N]) / zc - 1.0));
      worst = std::max(worst, std::abs(std::exp(rt.log_zf[N]) / zf - 1.0));
    }
    add_check(lines, "renewal_vs_enum_rel", N, 0, worst, "<", 1e-12);
  }

  {  // (b) strip DP vs contact expansion, N = 8, M = 8.
    const int N = 8, M = 8;
    const double a = 0.25;
    const KernelTable kt = transfer_kernel(model, a, M, N);
    const SurvivalTable st = survival(model, a, M, N);
    double worst = 0.0;
    for (const PinningFunction& pin :
         {make_constant_pinning(a, 0.2), make_smooth_bump_pinning(a)}) {
      const StripPartitionTable strip = strip_partition(pin, kt, st, N);
      const oracle::StripEnumResult en =
          oracle::strip_partition_enum(pin, kt, st, N);
      worst = std::max(worst,
                       std::abs(std::exp(strip.log_zc(N, 0)) / en.zc - 1.0));
      worst = std::max(worst,
                       std::abs(std::exp(strip.log_zf(N, 0)) / en.zf - 1.0));
    }
    add_check(lines, "strip_dp_vs_enum_rel", N, M, worst, "<", 1e-10);
  }

  {  // (c) renewal sampler frequencies, N = 10, 1e6 draws per case.
    const int N = 10;
    const std::int64_t S = 1000000;
    const RenewalTables rt = renewal_tables(bc, N);
    int phase = 1;
    for (char alpha : {'c', 'f'}) {
      const std::vector<double> probs =
          oracle::renewal_set_probs_enum(bc, N, alpha);
      std::vector<std::int64_t> obs(probs.size(), 0);
      for (std::int64_t i = 0; i < S; ++i) {
        RngStream rng(kSeed, stream_id(6, phase, i));
        const ContactSet cs = sample_contacts_renewal(rt, alpha, rng);
        std::size_t mask = 0;
        for (std::size_t k = 1; k < cs.times.size(); ++k) {
          mask |= std::size_t{1} << (cs.times[k] - 1);
        }
        ++obs[mask];
      }
      const ChiSquareResult gof = chi_square_gof(obs, probs);
      add_check(lines, std::string("renewal_sampler_chi2_p_") + alpha, N, S,
                gof.pvalue, ">", 0.001);
      ++phase;
    }
  }

  {  // (c) Markov-renewal sampler frequencies, N = 6, M = 4.
    const int N = 6, M = 4;
    const double a = 0.25;
    const std::int64_t S = 1000000;
    const KernelTable kt = transfer_kernel(model, a, M, N);
    const SurvivalTable st = survival(model, a, M, N);
    const PinningFunction pin = make_constant_pinning(a, critical_beta_strip(kt));
    const StripPartitionTable strip = strip_partition(pin, kt, st, N);
    const SpectralResult guard = leading_eigen(build_resolvent(kt, 0.0));
    int phase = 3;
    for (char alpha : {'c', 'f'}) {
      const std::vector<double> probs =
          oracle::strip_set_probs_enum(pin, kt, st, N, alpha);
      std::vector<std::int64_t> obs(probs.size(), 0);
      for (std::int64_t i = 0; i < S; ++i) {
        RngStream rng(kSeed, stream_id(6, phase, i));
        const ContactSet cs =
            sample_contacts_markov_renewal(strip, kt, guard, N, alpha, rng);
        std::size_t mask = 0;
        for (std::size_t k = 1; k < cs.times.size(); ++k) {
          mask |= std::size_t{1} << (cs.times[k] - 1);
        }
        ++obs[mask];
      }
      const ChiSquareResult gof = chi_square_gof(obs, probs);
      add_check(lines, std::string("markov_sampler_chi2_p_") + alpha, N, S,
                gof.pvalue, ">", 0.001);
      ++phase;
    }
  }
}

// ---------------------------------------------------------------------------
// Shared builder for the critical strip ensembles (criteria 7, 8, 11).

struct StripEnsemble {
  double a = 0.0;
  KernelTable kt;
  SurvivalTable st;
  StripPartitionTable strip;
  SpectralResult guard;
};

StripEnsemble build_critical_strip(int N, double beta_offset) {
  StripEnsemble e;
  const IncrementModel model = gaussian_model();
  e.a = std::pow(static_cast<double>(N), -0.75);
  const int M = 8;
  e.kt = transfer_kernel(model, e.a, M, N);
  e.st = survival(model, e.a, M, N);
  const double bca = critical_beta_strip(e.kt);
  const PinningFunction pin = make_constant_pinning(e.a, bca + beta_offset);
  e.strip = strip_partition(pin, e.kt, e.st, N);
  e.guard = leading_eigen(build_resolvent(e.kt, 0.0));
  return e;
}

// ---------------------------------------------------------------------------
// 7. Contact-set scaling: N = 4096, a = N^{-3/4}, 20000 free samples.

void criterion_contact_scaling(std::vector<CheckLine>& lines) {
  const auto t0 = std::chrono::steady_clock::now();
  const int N = 4096;
  const std::int64_t S = 20000;
  const StripEnsemble e = build_critical_strip(N, 0.0);

  std::vector<double> last_zero(S), scaled(S);
  parallel_for(S, [&](std::int64_t i) {
    RngStream rng(kSeed, stream_id(7, 0, i));
    const ContactSet cs =
        sample_contacts_markov_renewal(e.strip, e.kt, e.guard, N, 'f', rng);
    const ZeroSetSummary z = summarize_contacts(cs);
    last_zero[i] = z.last_zero;
    scaled[i] = z.scaled_count;
  });

  add_check(lines, "ks_last_zero_arcsine", N, S,
            ks_statistic(last_zero, RefLaw::arcsine, 1.0), "<", 0.03);
  add_check(lines, "ks_local_time_half_normal", N, S,
            ks_statistic(scaled, RefLaw::half_normal, 1.0), "<", 0.05);
  add_check(lines, "runtime_seconds", N, S, elapsed_s(t0), "<", 1200.0);
}

// ---------------------------------------------------------------------------
// 8. Path scaling: N = 2048, 5000 paths per boundary case.

void criterion_path_scaling(std::vector<CheckLine>& lines) {
  const int N = 2048;
  const std::int64_t S = 5000;
  const IncrementModel model = gaussian_model();
  const StripEnsemble e = build_critical_strip(N, 0.0);
  const std::vector<double> deltas = {0.1, 0.05, 0.025};

  std::vector<double> mid(S), endv(S), excess(S);
  std::vector<std::array<double, 3>> gam(S);

  parallel_for(S, [&](std::int64_t i) {
    RngStream rng(kSeed, stream_id(8, 0, i));
    const ContactSet cs =
        sample_contacts_markov_renewal(e.strip, e.kt, e.guard, N, 'c', rng);
    const PathSample path = assemble_path(cs, model, e.a, rng);
    mid[i] = std::abs(path.X(0.5));
    excess[i] = -std::numeric_limits<double>::infinity();
    for (int d = 0; d < 3; ++d) {
      const OscillationStat os = oscillation_stat(path, deltas[d]);
      gam[i][d] = os.gamma;
      // Gamma <= Gamma~ + a/sqrt(N): contact heights live in [0, a].
      excess[i] = std::max(
          excess[i],
          os.gamma - os.gamma_tilde - e.a / std::sqrt(static_cast<double>(N)));
    }
  });
  const double tilde_excess = *std::max_element(excess.begin(), excess.end());
  parallel_for(S, [&](std::int64_t i) {
    RngStream rng(kSeed, stream_id(8, 1, i));
    const ContactSet cs =
        sample_contacts_markov_renewal(e.strip, e.kt, e.guard, N, 'f', rng);
    const PathSample path = assemble_path(cs, model, e.a, rng);
    endv[i] = std::abs(path.X(1.0));
  });

  add_check(lines, "ks_midpoint_folded_normal", N, S,
            ks_statistic(mid, RefLaw::folded_normal, 0.5), "<", 0.05);
  add_check(lines, "ks_endpoint_half_normal", N, S,
            ks_statistic(endv, RefLaw::half_normal, 1.0), "<", 0.05);

  std::array<double, 3> frac = {0.0, 0.0, 0.0};
  for (std::int64_t i = 0; i < S; ++i) {
    for (int d = 0; d < 3; ++d) frac[d] += gam[i][d] > 0.5 ? 1.0 : 0.0;
  }
  for (int d = 0; d < 3; ++d) frac[d] /= static_cast<double>(S);
  // deltas are listed decreasing, so the exceedance must not increase.
  const double trend =
      std::max(frac[1] - frac[0], frac[2] - frac[1]);
  add_check(lines, "gamma_tightness_trend_excess", N, S, trend, "<=", 0.0);
  add_check(lines, "gamma_le_tilde_excess", N, S, tilde_excess, "<", 1e-12);
}

// ---------------------------------------------------------------------------
// 9. Near-critical MGF of the local time.

void criterion_mgf(std::vector<CheckLine>& lines) {
  const double bc = beta_c_exact();

  {  // eps = 1 against 2 e^{1/2} Phi(1).
    const int N = 4096;
    const std::int64_t S = 50000;
    const RenewalTables rt = renewal_tables(bc, N);
    std::vector<double> scaled(S);
    parallel_for(S, [&](std::int64_t i) {
      RngStream rng(kSeed, stream_id(9, 0, i));
      scaled[i] = summarize_contacts(sample_contacts_renewal(rt, 'f', rng))
                      .scaled_count;
    });
    const MgfEstimate est = local_time_mgf(scaled, 1.0);
    const double phi1 = 0.5 * std::erfc(-1.0 / std::sqrt(2.0));
    const double target = 2.0 * std::exp(0.5) * phi1;
    add_check(lines, "mgf_eps1_rel_err", N, S,
              std::abs(est.value / target - 1.0), "<", 0.05);
  }

  {  // eps_N = N^{-1/4}: estimates decrease toward 1.
    const std::vector<int> Ns = {256, 1024, 4096};
    const std::int64_t S = 20000;
    std::vector<double> v(Ns.size());
    for (std::size_t k = 0; k < Ns.size(); ++k) {
      const RenewalTables rt = renewal_tables(bc, Ns[k]);
      std::vector<double> scaled(S);
      parallel_for(S, [&](std::int64_t i) {
        RngStream rng(kSeed, stream_id(9, 1 + static_cast<int>(k), i));
        scaled[i] = summarize_contacts(sample_contacts_renewal(rt, 'f', rng))
                        .scaled_count;
      });
      v[k] = local_time_mgf(scaled, std::pow(Ns[k], -0.25)).value;
    }
    const double min_step = std::min(v[0] - v[1], v[1] - v[2]);
    add_check(lines, "mgf_epsN_min_decrement", 4096, S, min_step, ">", 0.0);
    add_check(lines, "mgf_epsN_final_above_one", 4096, S, v[2] - 1.0, ">",
              0.0);
  }
}

// ---------------------------------------------------------------------------
// 10. Closed-form MGF property test (exponential family, both branches).

void criterion_mgf_property(std::vector<CheckLine>& lines) {
  RngStream rng(kSeed, stream_id(10, 0, 0));
  const StatReport rep = mgf_lemma_property_test(rng);
  add_check(lines, rep.test, 0, rep.samples, rep.statistic, "<",
            rep.threshold);
  lines.back().pass = rep.pass;
}

// ---------------------------------------------------------------------------
// 11. Negative control: beta = beta_c(a) + 0.3 localizes the walk, so the
//     arcsine fit of the last zero must fail decisively.

void criterion_negative_control(std::vector<CheckLine>& lines) {
  const int N = 4096;
  const std::int64_t S = 20000;
  const StripEnsemble e = build_critical_strip(N, 0.3);

  std::vector<double> last_zero(S);
  parallel_for(S, [&](std::int64_t i) {
    RngStream rng(kSeed, stream_id(11, 0, i));
    const ContactSet cs =
        sample_contacts_markov_renewal(e.strip, e.kt, e.guard, N, 'f', rng);
    last_zero[i] = summarize_contacts(cs).last_zero;
  });

  add_check(lines, "ks_last_zero_arcsine_localized", N, S,
            ks_statistic(last_zero, RefLaw::arcsine, 1.0), ">", 0.1);
}

struct CriterionEntry {
  const char* name;
  void (*fn)(std::vector<CheckLine>&);
};

constexpr CriterionEntry kCriteria[] = {
    {"gaussian_closed_form", criterion_closed_form},
    {"kernel_lemma_suite", criterion_kernel_lemmas},
    {"ratio_bound_fit", criterion_ratio_fit},
    {"critical_point_bounds", criterion_critical_point},
    {"partition_sandwich", criterion_sandwich},
    {"oracle_equivalence", criterion_oracles},
    {"contact_set_scaling", criterion_contact_scaling},
    {"path_scaling", criterion_path_scaling},
    {"near_critical_mgf", criterion_mgf},
    {"mgf_property_closed_form", criterion_mgf_property},
    {"negative_control_localized", criterion_negative_control},
};

}  // namespace

int criterion_count() { return static_cast<int>(std::size(kCriteria)); }

std::string criterion_name(int id) {
  if (id < 1 || id > criterion_count()) {
    throw std::out_of_range("criterion_name: id out of range");
  }
  return kCriteria[id - 1].name;
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > criterion_count()) {
    throw std::out_of_range("run_criterion: id out of range");
  }
  CriterionResult r;
  r.id = id;
  r.name = kCriteria[id - 1].name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    kCriteria[id - 1].fn(r.lines);
    r.pass = !r.lines.empty();
    for (const CheckLine& c : r.lines) r.pass = r.pass && c.pass;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.error = ex.what();
  }
  r.seconds = elapsed_s(t0);
  return r;
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  out.reserve(criterion_count());
  for (int id = 1; id <= criterion_count(); ++id) {
    out.push_back(run_criterion(id));
  }
  return out;
}

void write_report_csv(const std::string& path,
                      const std::vector<CriterionResult>& results) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_report_csv: cannot open " + path);
  CsvWriter w(os);
  w.row({"test", "N", "M", "statistic", "threshold", "pass"});
  for (const CriterionResult& r : results) {
    const std::string prefix = "c" + std::to_string(r.id) + "_";
    for (const CheckLine& c : r.lines) {
      w.row({prefix + c.name, format_g(static_cast<double>(c.N)),
             format_g(static_cast<double>(c.M)), format_g(c.statistic),
             format_g(c.threshold), c.pass ? "1" : "0"});
    }
    w.row({prefix + "summary", "0", "0", format_g(r.seconds), "0",
           r.pass ? "1" : "0"});
  }
}

}  // namespace swlab::accept
