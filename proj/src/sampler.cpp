#include "swlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swlab/series.hpp"

namespace swlab {
namespace {

void check_alpha(char alpha) {
  if (alpha != 'c' && alpha != 'f') {
    throw std::invalid_argument("sampler: alpha must be 'c' or 'f'");
  }
}

}  // namespace

ContactSet sample_contacts_renewal(const RenewalTables& rt, char alpha,
                                   RngStream& rng) {
  check_alpha(alpha);
  const int N = rt.N;
  ContactSet cs;
  cs.N = N;
  cs.alpha = alpha;
  cs.times.push_back(0);
  cs.positions.push_back(0.0);
  const double shift = rt.beta - beta_c_exact();
  const std::vector<double>& log_z = alpha == 'c' ? rt.log_zc : rt.log_zf;

  int m = N;
  int now = 0;
  while (m > 0) {
    const double ref = log_z[m];
    double target = rng.uniform01();
    if (alpha == 'f') {
      const double p_stop = std::exp(rt.log_p[m] - ref);
      if (target < p_stop) break;
      target -= p_stop;
    }
    int chosen = m;
    double cum = 0.0;
    for (int t = 1; t <= m; ++t) {
      cum += std::exp(shift + rt.log_q[t] + log_z[m - t] - ref);
      if (cum >= target) {
        chosen = t;
        break;
      }
    }
    // Round-off can leave target marginally above the scanned mass; the
    // fallback lands on the largest gap, a valid event.
    now += chosen;
    m -= chosen;
    cs.times.push_back(now);
    cs.positions.push_back(0.0);
  }
  return cs;
}

ContactSet sample_contacts_markov_renewal(const StripPartitionTable& strip,
                                 const KernelTable& table,
                                 const SpectralResult& guard, int n,
                                 char alpha, RngStream& rng) {
  check_alpha(alpha);
  if (n < 1 || n > strip.N) {
    throw std::invalid_argument(
        "sample_contacts_markov_renewal: horizon out of range");
  }
  if (!(guard.residual <= 1e-8)) {
    throw std::invalid_argument(
        "sample_contacts_markov_renewal: spectral guard residual too large");
  }
  if (std::abs(table.a - strip.a) > 1e-12 || table.M != strip.M) {
    throw std::invalid_argument("sample_contacts_markov_renewal: table mismatch");
  }
  const int M = strip.M;
  const int Mi = M + 1;
  const std::vector<double>& log_z =
      alpha == 'c' ? strip.log_zc_rem : strip.log_zf_rem;
  const std::vector<double>& lrow = alpha == 'c' ? strip.lc : strip.lf;
  const std::vector<double>& hat = alpha == 'c' ? strip.zc_hat : strip.zf_hat;

  ContactSet cs;
  cs.N = n;
  cs.alpha = alpha;
  cs.times.push_back(0);
  cs.positions.push_back(0.0);

  int m = n;
  int now = 0;
  int idx = 0;
  while (m > 0) {
    const double ref = log_z[static_cast<size_t>(m) * Mi + idx];
    double target = rng.uniform01();
    if (alpha == 'f') {
      const double p_stop =
          strip.surv[static_cast<size_t>(m) * Mi + idx] * std::exp(-ref);
      if (target < p_stop) break;
      target -= p_stop;
    }
    int t_pick = m;
    int j_pick = M - 1;
    double cum = 0.0;
    bool done = false;
    for (int t = 1; t <= m && !done; ++t) {
      const int s = m - t;
      double scale = std::exp(lrow[s] - ref);
      if (scale < 1e-290) continue;
      const double* row = kernel_row_mid(table, t, idx, &scale);
      const double* hs = &hat[static_cast<size_t>(s) * Mi + 1];
      for (int j = 0; j < M; ++j) {
        cum += scale * row[j] * strip.wexp_phi[j] * hs[j];
        if (cum >= target) {
          t_pick = t;
          j_pick = j;
          done = true;
          break;
        }
      }
    }
    now += t_pick;
    m -= t_pick;
    idx = 1 + j_pick;
    cs.times.push_back(now);
    cs.positions.push_back(strip.grid.x[j_pick]);
  }
  return cs;
}

std::vector<double> sample_excursion(const IncrementModel& model, double a,
                                     double x, double y, int n, RngStream& rng,
                                     long long* attempts) {
  if (n < 1) throw std::invalid_argument("sample_excursion: n must be >= 1");
  if (model.name != "gaussian") {
    throw std::invalid_argument(
        "sample_excursion: bridge construction needs the gaussian model");
  }
  std::vector<double> path(n + 1);
  path[0] = x;
  path[n] = y;
  if (attempts) *attempts = 0;
  if (n == 1) return path;

  const long long cap = 200LL * n;
  std::vector<double> prefix(n);
  for (long long attempt = 0; attempt < cap; ++attempt) {
    double run = 0.0;
    for (int k = 0; k < n; ++k) {
      run += rng.normal();
      prefix[k] = run;
    }
    // Conditioning the walk on S_n = y tilts each prefix linearly.
    const double drift = (y - x - prefix[n - 1]) / n;
    bool ok = true;
    for (int k = 1; k < n; ++k) {
      const double v = x + prefix[k - 1] + drift * k;
      if (!(v > a)) {
        ok = false;
        break;
      }
      path[k] = v;
    }
    if (ok) {
      if (attempts) *attempts = attempt + 1;
      return path;
    }
  }
  throw std::runtime_error("sample_excursion: rejection cap exceeded");
}

std::vector<double> sample_free_stretch(const IncrementModel& model, double a,
                                        double y, int m, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("sample_free_stretch: m must be >= 1");
  if (!model.has_sampler()) {
    throw std::invalid_argument("sample_free_stretch: model lacks a sampler");
  }
  std::vector<double> out(m);
  const long long cap = 200LL * (static_cast<long long>(std::sqrt(m)) + 1);
  for (long long attempt = 0; attempt < cap; ++attempt) {
    double v = y;
    bool ok = true;
    for (int k = 0; k < m; ++k) {
      v += model.sampler(rng);
      if (!(v > a)) {
        ok = false;
        break;
      }
      out[k] = v;
    }
    if (ok) return out;
  }
  throw std::runtime_error("sample_free_stretch: rejection cap exceeded");
}

PathSample assemble_path(const ContactSet& contacts,
                         const IncrementModel& model, double a,
                         RngStream& rng) {
  if (contacts.times.empty() || contacts.times.front() != 0) {
    throw std::invalid_argument("assemble_path: bad contact set");
  }
  PathSample ps;
  ps.N = contacts.N;
  ps.alpha = contacts.alpha;
  ps.a = a;
  ps.contact_times = contacts.times;
  ps.values.assign(contacts.N + 1, 0.0);
  ps.values[0] = contacts.positions[0];

  for (size_t k = 1; k < contacts.times.size(); ++k) {
    const int t0 = contacts.times[k - 1];
    const int t1 = contacts.times[k];
    const std::vector<double> exc =
        sample_excursion(model, a, contacts.positions[k - 1],
                         contacts.positions[k], t1 - t0, rng);
    for (int i = 1; i <= t1 - t0; ++i) ps.values[t0 + i] = exc[i];
  }
  const int last = contacts.times.back();
  if (last < contacts.N) {
    if (contacts.alpha == 'c') {
      throw std::invalid_argument(
          "assemble_path: constrained set must reach N");
    }
    const std::vector<double> tail = sample_free_stretch(
        model, a, contacts.positions.back(), contacts.N - last, rng);
    for (int i = 0; i < contacts.N - last; ++i) {
      ps.values[last + 1 + i] = tail[i];
    }
  }
  return ps;
}

double PathSample::X(double t) const {
  if (!(t >= 0.0) || !(t <= 1.0)) {
    throw std::domain_error("PathSample::X: t outside [0, 1]");
  }
  const double s = t * N;
  const int k = std::min(static_cast<int>(s), N - 1);
  const double frac = s - k;
  const double v = values[k] + frac * (values[k + 1] - values[k]);
  return v / std::sqrt(static_cast<double>(N));
}

}  // namespace swlab
