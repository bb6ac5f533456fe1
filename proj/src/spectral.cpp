#include "swlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swlab/series.hpp"

namespace swlab {

ResolventKernel build_resolvent(const KernelTable& table, double lambda) {
  if (lambda < 0.0) throw std::domain_error("resolvent: lambda must be >= 0");
  if (table.a <= 0.0 || table.M < 1) {
    throw std::invalid_argument("resolvent: table must cover a positive strip");
  }
  const int M = table.M;
  ResolventKernel rk;
  rk.lambda = lambda;
  rk.a = table.a;
  rk.M = M;
  rk.w = table.grid.w;
  rk.b.assign(static_cast<size_t>(M) * M, 0.0);

  // Geometric decay factors e^{-lambda n}; summed ascending from the far end
  // of the table so the small terms accumulate first.
  const double tail = power_tail_sum(lambda, table.n_max);
  double cmax = 0.0;
  for (int i = 0; i < M; ++i) {
    for (int j = i; j < M; ++j) {
      double acc = table.tail(1 + i, 1 + j) * tail;
      for (int n = table.n_max; n >= 1; --n) {
        acc += std::exp(-lambda * n) * table.value(n, 1 + i, 1 + j);
      }
      rk.b[static_cast<size_t>(i) * M + j] = acc;
      rk.b[static_cast<size_t>(j) * M + i] = acc;
    }
  }
  for (int n = 1; n <= table.n_max; ++n) {
    const double nn = std::pow(static_cast<double>(n), 1.5);
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < M; ++j) {
        cmax = std::max(cmax, nn * table.value(n, 1 + i, 1 + j));
      }
    }
  }
  double hs = 0.0;
  for (double v : rk.b) hs += v * v;
  rk.hs_value = rk.w * rk.w * hs;
  const double poly = polylog_three_halves(lambda);
  rk.hs_bound = (cmax * rk.a * poly) * (cmax * rk.a * poly);
  return rk;
}

SpectralResult leading_eigen(const ResolventKernel& kernel, double tol,
                             int max_iter) {
  const int M = kernel.M;
  const double w = kernel.w;
  SpectralResult out;
  out.lambda = kernel.lambda;
  std::vector<double> v(M, 1.0), u(M, 0.0);
  auto normalize = [&](std::vector<double>& x) {
    double s2 = 0.0;
    for (double t : x) s2 += t * t;
    const double nrm = std::sqrt(w * s2);
    for (double& t : x) t /= nrm;
    return nrm;
  };
  normalize(v);
  double delta = 0.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    for (int i = 0; i < M; ++i) {
      double acc = 0.0;
      const double* row = &kernel.b[static_cast<size_t>(i) * M];
      for (int j = 0; j < M; ++j) acc += row[j] * v[j];
      u[i] = w * acc;
    }
    double ray = 0.0;
    for (int i = 0; i < M; ++i) ray += v[i] * u[i];
    delta = w * ray;
    double res2 = 0.0;
    for (int i = 0; i < M; ++i) {
      const double r = u[i] - delta * v[i];
      res2 += r * r;
    }
    const double res = std::sqrt(w * res2) / std::max(delta, 1e-300);
    if (res <= tol) {
      out.residual = res;
      break;
    }
    v = u;
    normalize(v);
    out.residual = res;
  }
  // The kernel is entrywise positive, so the leading eigenvector is too;
  // fix the sign convention.
  double sum = 0.0;
  for (double t : v) sum += t;
  if (sum < 0.0) {
    for (double& t : v) t = -t;
  }
  for (double& t : v) {
    if (t < 0.0) t = 0.0;  // clip tiny negative round-off
  }
  normalize(v);
  out.delta = delta;
  out.V = std::move(v);
  out.iterations = it + 1;
  return out;
}

double critical_beta_strip(const KernelTable& table) {
  const ResolventKernel rk = build_resolvent(table, 0.0);
  const SpectralResult eig = leading_eigen(rk);
  if (!(eig.delta > 0.0)) {
    throw std::runtime_error("critical_beta_strip: nonpositive eigenvalue");
  }
  return -std::log(eig.delta);
}

double free_energy(const KernelTable& table, double beta, double lambda_tol) {
  const double target = std::exp(-beta);
  const double delta0 = leading_eigen(build_resolvent(table, 0.0)).delta;
  if (delta0 <= target) return 0.0;  // beta <= beta_c(a)

  auto delta_at = [&](double lam) {
    return leading_eigen(build_resolvent(table, lam)).delta;
  };
  double lo = 0.0, hi = 0.5;
  while (delta_at(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw std::runtime_error("free_energy: bracket failed");
  }
  while (hi - lo > lambda_tol) {
    const double mid = 0.5 * (lo + hi);
    if (delta_at(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace swlab
