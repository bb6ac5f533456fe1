#include "swlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "swlab/series.hpp"

namespace swlab {

double local_time_b() {
  // sqrt(2 pi)/zeta(3/2): the constant that sends b|A_N|/sqrt(N) to the
  // Levy-normalized Brownian local time (law |N(0,1)|).  The subordinator
  // inverse with the 2 sqrt(pi) normalizer is sqrt(2) times that variable.
  return std::sqrt(2.0 * M_PI) / zeta_three_halves();
}

ZeroSetSummary summarize_contacts(const ContactSet& cs) {
  ZeroSetSummary s;
  s.N = cs.N;
  s.count = static_cast<int>(cs.times.size());
  s.last_zero = cs.N > 0 ? static_cast<double>(cs.times.back()) / cs.N : 1.0;
  s.scaled_count =
      local_time_b() * s.count / std::sqrt(static_cast<double>(std::max(cs.N, 1)));
  int gap = cs.N - cs.times.back();  // open tail gap; 0 when the set ends at N
  for (size_t k = 1; k < cs.times.size(); ++k) {
    gap = std::max(gap, cs.times[k] - cs.times[k - 1]);
  }
  s.largest_gap = gap;
  return s;
}

bool covers(const ContactSet& cs, double t, double eps) {
  const double lo = (t - eps) * cs.N;
  const double hi = (t + eps) * cs.N;
  for (int u : cs.times) {
    if (u >= lo && u <= hi) return true;
  }
  return false;
}

RefLaw ref_law_from_string(const std::string& s) {
  if (s == "arcsine") return RefLaw::arcsine;
  if (s == "half_normal") return RefLaw::half_normal;
  if (s == "folded_normal") return RefLaw::folded_normal;
  if (s == "uniform01") return RefLaw::uniform01;
  throw std::invalid_argument("unknown reference law: " + s);
}

std::string ref_law_name(RefLaw law) {
  switch (law) {
    case RefLaw::arcsine:
      return "arcsine";
    case RefLaw::half_normal:
      return "half_normal";
    case RefLaw::folded_normal:
      return "folded_normal";
    case RefLaw::uniform01:
      return "uniform01";
  }
  return "?";
}

double ref_cdf(RefLaw law, double x, double param) {
  switch (law) {
    case RefLaw::arcsine: {
      const double t = std::clamp(x, 0.0, 1.0);
      return 2.0 / M_PI * std::asin(std::sqrt(t));
    }
    case RefLaw::half_normal:
    case RefLaw::folded_normal: {
      // folded normal with mean 0 coincides with the half-normal
      if (x <= 0.0) return 0.0;
      return std::erf(x / (param * std::sqrt(2.0)));
    }
    case RefLaw::uniform01:
      return std::clamp(x, 0.0, 1.0);
  }
  throw std::logic_error("ref_cdf: unknown law");
}

double ks_statistic(std::vector<double> xs, RefLaw law, double param) {
  if (xs.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double f = ref_cdf(law, xs[i], param);
    d = std::max(d, (i + 1) / n - f);
    d = std::max(d, f - i / n);
  }
  return d;
}

StatReport ks_report(const std::string& name, std::vector<double> xs,
                     RefLaw law, double param, double threshold,
                     std::int64_t min_samples) {
  StatReport r;
  r.test = name;
  r.law = ref_law_name(law);
  r.param = param;
  r.samples = static_cast<std::int64_t>(xs.size());
  r.threshold = threshold;
  if (r.samples < min_samples) {
    r.statistic = HUGE_VAL;
    r.pass = false;
    r.note = "undersampled";
    return r;
  }
  r.statistic = ks_statistic(std::move(xs), law, param);
  r.pass = r.statistic < threshold;
  return r;
}

StatReport path_marginal_report(const std::string& name,
                                std::vector<double> abs_values, char alpha,
                                double t, double threshold) {
  if (alpha == 'f') {
    if (!(t > 0.0) || t > 1.0) {
      throw std::invalid_argument(
          "path_marginal_report: free t must lie in (0, 1]");
    }
    return ks_report(name, std::move(abs_values), RefLaw::half_normal,
                     std::sqrt(t), threshold);
  }
  if (alpha != 'c') throw std::invalid_argument("path_marginal_report: alpha");
  if (!(t > 0.0) || !(t < 1.0)) {
    throw std::invalid_argument(
        "path_marginal_report: constrained t must lie in (0, 1)");
  }
  const double sd = std::sqrt(t * (1.0 - t));
  return ks_report(name, std::move(abs_values), RefLaw::folded_normal, sd,
                   threshold);
}

MgfEstimate local_time_mgf(const std::vector<double>& scaled_counts,
                           double eps) {
  if (scaled_counts.empty()) {
    throw std::invalid_argument("local_time_mgf: empty sample");
  }
  long double sum = 0.0L, sum2 = 0.0L;
  for (double sc : scaled_counts) {
    const long double v = std::exp(eps * sc);
    sum += v;
    sum2 += v * v;
  }
  const long double n = static_cast<long double>(scaled_counts.size());
  MgfEstimate out;
  out.samples = static_cast<std::int64_t>(scaled_counts.size());
  out.value = static_cast<double>(sum / n);
  const long double var = std::max<long double>(sum2 / n - (sum / n) * (sum / n), 0.0L);
  out.std_error = static_cast<double>(std::sqrt(var / n));
  return out;
}

MgfEstimate local_time_mgf(const std::vector<ContactSet>& sets, double eps) {
  std::vector<double> scaled;
  scaled.reserve(sets.size());
  for (const ContactSet& cs : sets) {
    if (cs.alpha != 'f') {
      throw std::invalid_argument(
          "local_time_mgf: boundary types mixed or not free");
    }
    scaled.push_back(summarize_contacts(cs).scaled_count);
  }
  return local_time_mgf(scaled, eps);
}

namespace {

// max_j (window max - window min) over windows [j - d, j] of v, restricted
// to index range [lo, hi]; equals sup over pairs at distance <= d.
double window_modulus(const std::vector<double>& v, int lo, int hi, int d) {
  std::deque<int> qmax, qmin;
  double best = 0.0;
  for (int j = lo; j <= hi; ++j) {
    while (!qmax.empty() && v[qmax.back()] <= v[j]) qmax.pop_back();
    qmax.push_back(j);
    while (!qmin.empty() && v[qmin.back()] >= v[j]) qmin.pop_back();
    qmin.push_back(j);
    const int cut = j - d;
    while (qmax.front() < cut) qmax.pop_front();
    while (qmin.front() < cut) qmin.pop_front();
    best = std::max(best, v[qmax.front()] - v[qmin.front()]);
  }
  return best;
}

}  // namespace

OscillationStat oscillation_stat(const PathSample& path, double delta) {
  const int N = path.N;
  const int d = static_cast<int>(delta * N);
  if (d < 1) throw std::invalid_argument("oscillation_stat: delta N < 1");
  OscillationStat out;
  const double scale = std::sqrt(static_cast<double>(N));
  out.gamma = window_modulus(path.values, 0, N, d) / scale;

  double gt = 0.0;
  const std::vector<int>& c = path.contact_times;
  for (size_t k = 0; k + 1 < c.size(); ++k) {
    gt = std::max(gt, window_modulus(path.values, c[k], c[k + 1], d));
  }
  if (c.back() < N) {
    gt = std::max(gt, window_modulus(path.values, c.back(), N, d));
  }
  out.gamma_tilde = gt / scale;
  return out;
}

StatReport mgf_lemma_property_test(RngStream& rng) {
  StatReport r;
  r.test = "mgf_lemma_closed_form";
  r.law = "exponential";
  const double rates[3] = {1.7, 2.3, 2.9};
  const int ns[4] = {16, 256, 4096, 65536};
  bool ok = true;
  double worst = 0.0;
  for (double rate : rates) {
    double prev_plus = HUGE_VAL, prev_minus = HUGE_VAL;
    for (int n : ns) {
      const double eps = 1.0 / std::sqrt(static_cast<double>(n));
      const double plus = rate / (rate - eps);   // E e^{+eps X}
      const double minus = rate / (rate + eps);  // E e^{-eps X}
      const double dev_plus = std::abs(plus - 1.0);
      const double dev_minus = std::abs(minus - 1.0);
      ok = ok && dev_plus < prev_plus && dev_minus < prev_minus;
      ok = ok && dev_plus <= 2.0 * eps / rate && dev_minus <= eps / rate;
      prev_plus = dev_plus;
      prev_minus = dev_minus;
      worst = std::max(worst, std::max(dev_plus, dev_minus));
    }
  }
  // Monte Carlo confirmation at the largest N, smallest rate.
  {
    const double rate = rates[0];
    const double eps = 1.0 / std::sqrt(65536.0);
    const int m = 100000;
    long double sum = 0.0L, sum2 = 0.0L;
    for (int i = 0; i < m; ++i) {
      const double x = -std::log(rng.uniform01_open()) / rate;
      const long double v = std::exp(eps * x);
      sum += v;
      sum2 += v * v;
    }
    const double mean = static_cast<double>(sum / m);
    const double var =
        static_cast<double>(std::max(sum2 / m - (sum / m) * (sum / m), 0.0L));
    const double se = std::sqrt(var / m);
    const double target = rate / (rate - eps);
    ok = ok && std::abs(mean - target) <= 5.0 * se + 1e-12;
    r.samples = m;
  }
  r.statistic = worst;
  r.threshold = 2.0 / (rates[0] * 4.0);  // largest allowed deviation, N = 16
  r.pass = ok;
  return r;
}

double chi_square_pvalue(double stat, int dof) {
  if (dof < 1) throw std::invalid_argument("chi_square_pvalue: dof < 1");
  if (stat <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * stat);
}

ChiSquareResult chi_square_gof(const std::vector<std::int64_t>& observed,
                               const std::vector<double>& probs,
                               double min_expected) {
  if (observed.size() != probs.size() || observed.empty()) {
    throw std::invalid_argument("chi_square_gof: size mismatch");
  }
  std::int64_t total = 0;
  for (std::int64_t o : observed) total += o;
  if (total <= 0) throw std::invalid_argument("chi_square_gof: empty sample");

  double stat = 0.0;
  int cells = 0;
  double pooled_e = 0.0;
  std::int64_t pooled_o = 0;
  for (size_t k = 0; k < probs.size(); ++k) {
    const double e = probs[k] * total;
    if (e >= min_expected) {
      const double diff = observed[k] - e;
      stat += diff * diff / e;
      ++cells;
    } else {
      pooled_e += e;
      pooled_o += observed[k];
    }
  }
  if (pooled_e > 0.0) {
    const double diff = pooled_o - pooled_e;
    stat += diff * diff / pooled_e;
    ++cells;
  }
  ChiSquareResult out;
  out.stat = stat;
  out.cells = cells;
  out.dof = std::max(cells - 1, 1);
  out.pvalue = chi_square_pvalue(stat, out.dof);
  return out;
}

}  // namespace swlab
