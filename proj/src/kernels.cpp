#include "swlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace swlab {
namespace {

constexpr int kMaxLanes = 72;

int even_ceil(double v) {
  int n = static_cast<int>(std::ceil(v));
  if (n < 2) n = 2;
  return (n % 2 == 0) ? n : n + 1;
}

// Simpson weights (without the h/3 factor) for node r in 0..H, H even.
inline double simpson_coeff(int r, int H) {
  if (r == 0 || r == H) return 1.0;
  return (r % 2 == 1) ? 4.0 : 2.0;
}

struct HalfLineDp {
  double a = 0.0;
  double h = 0.0625;
  int Dk = 0;              // taps on each side
  int H_full = 0;          // node count - 1 (even)
  std::vector<double> tap; // tap[d] = rho(d*h), d = 0..Dk
  std::vector<int> h_act;  // active even interval count per n, 1-based

  HalfLineDp(const IncrementModel& model, double a_, int n_max,
             const KernelOptions& o, double height_mult) : a(a_), h(o.h) {
    Dk = static_cast<int>(std::floor(o.tap_halfwidth / h + 1e-9));
    tap.resize(Dk + 1);
    for (int d = 0; d <= Dk; ++d) tap[d] = model.density(d * h);
    h_act.resize(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
      h_act[n] = even_ceil((height_mult * std::sqrt(static_cast<double>(n)) +
                            o.height_pad) / h);
    }
    H_full = h_act[n_max];
  }
};

}  // namespace

double closed_form_fn(int n) {
  if (n < 1) throw std::invalid_argument("closed_form_fn: n < 1");
  return std::pow(static_cast<double>(n), -1.5) /
         std::sqrt(2.0 * std::numbers::pi);
}

double survival_exact(int n) {
  if (n < 0) throw std::invalid_argument("survival_exact: n < 0");
  double p = 1.0;
  for (int k = 1; k <= n; ++k) p *= (2.0 * k - 1.0) / (2.0 * k);
  return p;
}

double KernelTable::eval(std::int64_t n, int i, int j) const {
  if (n < 1) throw std::invalid_argument("KernelTable::eval: n < 1");
  if (n <= n_max) return value(static_cast<int>(n), i, j);
  return tail(i, j) * std::pow(static_cast<double>(n), -1.5);
}

double SurvivalTable::eval(std::int64_t n, int i) const {
  if (n < 0) throw std::invalid_argument("SurvivalTable::eval: n < 0");
  if (n == 0) return 1.0;
  if (n <= n_max) return value(static_cast<int>(n), i);
  return tail_c[i] / std::sqrt(static_cast<double>(n));
}

KernelTable transfer_kernel(const IncrementModel& model, double a, int M,
                            int n_max, const KernelOptions& opts) {
  if (a < 0.0) throw std::invalid_argument("transfer_kernel: a < 0");
  if (n_max < 1) throw std::invalid_argument("transfer_kernel: n_max < 1");
  if (a > 0.0 && M < 1) throw std::invalid_argument("transfer_kernel: M < 1");

  KernelTable t;
  t.a = a;
  t.n_max = n_max;
  t.opts = opts;
  if (a > 0.0) {
    t.M = M;
    t.grid = make_grid(a, M);
    t.L = M + 2;
    t.xs.resize(t.L);
    t.xs[0] = 0.0;
    for (int i = 0; i < M; ++i) t.xs[1 + i] = t.grid.x[i];
    t.xs[t.L - 1] = a;
  } else {
    t.M = 0;
    t.L = 1;
    t.xs = {0.0};
  }
  const int L = t.L;
  t.values.assign(static_cast<std::size_t>(n_max) * L * L, 0.0);
  t.tail_c.assign(static_cast<std::size_t>(L) * L, 0.0);

  // n = 1: one unconstrained step.
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      t.values[static_cast<std::size_t>(i) * L + j] =
          model.density(t.xs[i] - t.xs[j]);
  if (n_max == 1) {
    for (int i = 0; i < L * L; ++i) t.tail_c[i] = t.values[i];
    return t;
  }

  const HalfLineDp dp(model, a, n_max, opts, opts.height_mult);
  const int Dk = dp.Dk;
  const double h = dp.h;
  const int stride = (L + 7) & ~7;
  if (stride > kMaxLanes)
    throw std::invalid_argument("transfer_kernel: grid too large (M > 62)");

  const std::size_t rows = static_cast<std::size_t>(dp.H_full) + 1;
  std::vector<double> G(rows * stride, 0.0), Gn(rows * stride, 0.0),
      WG(rows * stride, 0.0);

  // G_1(r, j) = rho(y_j - s_r), s_r = a + r h.
  for (int r = 0; r <= dp.h_act[1]; ++r)
    for (int j = 0; j < L; ++j)
      G[static_cast<std::size_t>(r) * stride + j] =
          model.density(t.xs[j] - (a + r * h));

  // Strip-row taps rho(s_r - x_i); s_r - x_i = (a - x_i) + r h >= 0.
  std::vector<double> stap(static_cast<std::size_t>(L) * (Dk + 1), 0.0);
  std::vector<int> stap_rmax(L);
  for (int i = 0; i < L; ++i) {
    double off = a - t.xs[i];
    stap_rmax[i] =
        std::min<int>(Dk, static_cast<int>(std::floor(
                              (opts.tap_halfwidth - off) / h + 1e-9)));
    for (int r = 0; r <= stap_rmax[i]; ++r)
      stap[static_cast<std::size_t>(i) * (Dk + 1) + r] =
          model.density(off + r * h);
  }

  const double h3 = h / 3.0;
  int H_in = dp.h_act[1];
  for (int n = 2; n <= n_max; ++n) {
    const int H_out = dp.h_act[n];
    // Weighted copy of the current state (Simpson pattern over 0..H_in).
    for (int r = 0; r <= H_in; ++r) {
      const double c = h3 * simpson_coeff(r, H_in);
      const double* in = &G[static_cast<std::size_t>(r) * stride];
      double* out = &WG[static_cast<std::size_t>(r) * stride];
      for (int j = 0; j < stride; ++j) out[j] = c * in[j];
    }

    // Strip rows: f_n(x_i, y_j) = sum_r rho(s_r - x_i) W_r G_{n-1}(r, j).
    double* vals_n = &t.values[(static_cast<std::size_t>(n) - 1) * L * L];
    for (int i = 0; i < L; ++i) {
      double acc[kMaxLanes] = {0.0};
      const int rmax = std::min(stap_rmax[i], H_in);
      const double* st = &stap[static_cast<std::size_t>(i) * (Dk + 1)];
      for (int r = 0; r <= rmax; ++r) {
        const double c = st[r];
        const double* in = &WG[static_cast<std::size_t>(r) * stride];
        for (int j = 0; j < stride; ++j) acc[j] += c * in[j];
      }
      for (int j = 0; j < L; ++j) vals_n[static_cast<std::size_t>(i) * L + j] = acc[j];
    }

    if (n == n_max) break;  // G_n itself is only needed to produce n+1 rows

    // Half-line step: G_n(r, .) = sum_d rho(d h) WG(r + d, .).
    for (int r = 0; r <= H_out; ++r) {
      const int dlo = std::max(-Dk, -r);
      const int dhi = std::min(Dk, H_in - r);
      double acc[kMaxLanes] = {0.0};
      for (int d = dlo; d <= dhi; ++d) {
        const double c = dp.tap[d < 0 ? -d : d];
        const double* in = &WG[static_cast<std::size_t>(r + d) * stride];
        for (int j = 0; j < stride; ++j) acc[j] += c * in[j];
      }
      double* out = &Gn[static_cast<std::size_t>(r) * stride];
      std::memcpy(out, acc, sizeof(double) * stride);
    }
    std::swap(G, Gn);
    H_in = H_out;
  }

  // Tail coefficients: least squares with constant model on n^{3/2} values
  // over the last quarter of indices.
  const int w_lo = std::max(1, (3 * n_max) / 4);
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < L; ++j) {
      double s = 0.0;
      int cnt = 0;
      for (int n = w_lo; n <= n_max; ++n) {
        s += std::pow(static_cast<double>(n), 1.5) * t.value(n, i, j);
        ++cnt;
      }
      t.tail_c[static_cast<std::size_t>(i) * L + j] = s / cnt;
    }
  }
  return t;
}

SurvivalTable survival(const IncrementModel& model, double a, int M, int n_max,
                       const KernelOptions& opts) {
  if (a < 0.0) throw std::invalid_argument("survival: a < 0");
  if (n_max < 1) throw std::invalid_argument("survival: n_max < 1");
  if (a > 0.0 && M < 1) throw std::invalid_argument("survival: M < 1");

  SurvivalTable t;
  t.a = a;
  t.n_max = n_max;
  if (a > 0.0) {
    t.M = M;
    t.grid = make_grid(a, M);
    t.L = M + 2;
    t.xs.resize(t.L);
    t.xs[0] = 0.0;
    for (int i = 0; i < M; ++i) t.xs[1 + i] = t.grid.x[i];
    t.xs[t.L - 1] = a;
  } else {
    t.M = 0;
    t.L = 1;
    t.xs = {0.0};
  }
  const int L = t.L;
  t.values.assign(static_cast<std::size_t>(n_max) * L, 0.0);
  t.tail_c.assign(L, 0.0);

  // Increment CDF for the absorbed mass. Only the Gaussian model carries a
  // closed form here; the DP needs int_{-inf}^{u} rho.
  auto cdf = [&](double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); };
  if (model.name != "gaussian")
    throw std::invalid_argument("survival: only the gaussian model is supported");

  // One-sided deficiency spreads like sqrt(n) with Gaussian tails, so the
  // active height needs a larger multiplier than the returning kernel.
  const double surv_mult = 7.0;
  const HalfLineDp dp(model, a, n_max, opts, surv_mult);
  const int Dk = dp.Dk;
  const double h = dp.h;
  const double h3 = h / 3.0;

  // S1(x) = P(step from x stays above a) = 1 - cdf(a - x).
  for (int i = 0; i < L; ++i) t.values[i] = 1.0 - cdf(a - t.xs[i]);
  if (n_max == 1) {
    for (int i = 0; i < L; ++i) t.tail_c[i] = t.values[i];
    return t;
  }

  const std::size_t rows = static_cast<std::size_t>(dp.H_full) + 1;
  std::vector<double> D(rows, 0.0), Dn(rows, 0.0), WD(rows, 0.0);
  // D_1(s) = cdf(a - s), s = a + r h.
  for (int r = 0; r <= dp.h_act[1]; ++r) D[r] = cdf(-(r * h));

  std::vector<double> stap(static_cast<std::size_t>(L) * (Dk + 1), 0.0);
  std::vector<int> stap_rmax(L);
  for (int i = 0; i < L; ++i) {
    double off = a - t.xs[i];
    stap_rmax[i] =
        std::min<int>(Dk, static_cast<int>(std::floor(
                              (opts.tap_halfwidth - off) / h + 1e-9)));
    for (int r = 0; r <= stap_rmax[i]; ++r)
      stap[static_cast<std::size_t>(i) * (Dk + 1) + r] =
          model.density(off + r * h);
  }

  int H_in = dp.h_act[1];
  for (int n = 2; n <= n_max; ++n) {
    const int H_out = dp.h_act[n];
    for (int r = 0; r <= H_in; ++r) WD[r] = h3 * simpson_coeff(r, H_in) * D[r];

    double* vals_n = &t.values[(static_cast<std::size_t>(n) - 1) * L];
    for (int i = 0; i < L; ++i) {
      const int rmax = std::min(stap_rmax[i], H_in);
      const double* st = &stap[static_cast<std::size_t>(i) * (Dk + 1)];
      double acc = 0.0;
      for (int r = 0; r <= rmax; ++r) acc += st[r] * WD[r];
      vals_n[i] = (1.0 - cdf(a - t.xs[i])) - acc;
    }

    if (n == n_max) break;
    for (int r = 0; r <= H_out; ++r) {
      const int dlo = std::max(-Dk, -r);
      const int dhi = std::min(Dk, H_in - r);
      double acc = cdf(-(r * h));  // absorbed below a in one step
      for (int d = dlo; d <= dhi; ++d) acc += dp.tap[d < 0 ? -d : d] * WD[r + d];
      Dn[r] = acc;
    }
    std::swap(D, Dn);
    H_in = H_out;
  }

  const int w_lo = std::max(1, (3 * n_max) / 4);
  for (int i = 0; i < L; ++i) {
    double s = 0.0;
    int cnt = 0;
    for (int n = w_lo; n <= n_max; ++n) {
      s += std::sqrt(static_cast<double>(n)) * t.value(n, i);
      ++cnt;
    }
    t.tail_c[i] = s / cnt;
  }
  return t;
}

LadderEstimate ladder_constant(const IncrementModel& model, double a, double x,
                               std::int64_t samples, RngStream& rng,
                               std::int64_t step_cap) {
  if (samples < 1) throw std::invalid_argument("ladder_constant: samples < 1");
  const double u = a - x;
  LadderEstimate est;
  est.samples = samples;
  if (u <= 0.0) {
    est.estimate = 1.0;
    return est;
  }
  std::int64_t hits = 0;
  for (std::int64_t k = 0; k < samples; ++k) {
    for (;;) {
      double s = 0.0;
      std::int64_t steps = 0;
      bool done = false;
      while (steps < step_cap) {
        s += sample_increment(model, rng);
        ++steps;
        if (s > 0.0) {
          if (s >= u) ++hits;
          done = true;
          break;
        }
      }
      if (done) break;
      ++est.restarts;
    }
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  est.estimate = p;
  est.std_error = std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                            static_cast<double>(samples));
  return est;
}

double oracle_fn_bruteforce(const IncrementModel& model, double a, double x,
                            double y, int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("oracle_fn_bruteforce: n must be in 1..4");
  if (a < 0.0) throw std::invalid_argument("oracle_fn_bruteforce: a < 0");
  if (n == 1) return model.density(x - y);

  // Composite 4-point Gauss-Legendre panels on [a, a + range].
  const double range = 7.0 + 4.0 * std::sqrt(static_cast<double>(n)) + a;
  const double hp = 0.05;
  const int panels = static_cast<int>(std::ceil(range / hp));
  const double gl_x[4] = {-0.8611363115940526, -0.3399810435848563,
                          0.3399810435848563, 0.8611363115940526};
  const double gl_w[4] = {0.3478548451374538, 0.6521451548625461,
                          0.6521451548625461, 0.3478548451374538};
  const int K = 4 * panels;
  std::vector<double> node(K), wt(K);
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * hp, c = lo + 0.5 * hp, half = 0.5 * hp;
    for (int q = 0; q < 4; ++q) {
      node[4 * p + q] = c + half * gl_x[q];
      wt[4 * p + q] = half * gl_w[q];
    }
  }
  std::vector<double> u(K), v(K);
  for (int k = 0; k < K; ++k) u[k] = model.density(node[k] - x);
  for (int step = 0; step < n - 2; ++step) {
    for (int k = 0; k < K; ++k) {
      double acc = 0.0;
      for (int m = 0; m < K; ++m)
        acc += u[m] * wt[m] * model.density(node[k] - node[m]);
      v[k] = acc;
    }
    std::swap(u, v);
  }
  double acc = 0.0;
  for (int m = 0; m < K; ++m) acc += u[m] * wt[m] * model.density(y - node[m]);
  return acc;
}

}  // namespace swlab
