#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swlab/rng.hpp"
#include "swlab/sampler.hpp"

namespace swlab {

// Local-time normalizer b = sqrt(2 pi) / zeta(3/2); b|A_N|/sqrt(N) converges
// to the half-normal local time of reflected Brownian motion.
double local_time_b();

// Scalar functionals of one contact set; holds no reference to the set so
// large sample batches can stream.
struct ZeroSetSummary {
  int N = 0;
  int count = 0;           // |A|, origin included
  double last_zero = 0.0;  // t_last / N
  double scaled_count = 0.0;  // b |A| / sqrt(N)
  int largest_gap = 0;     // max inter-contact gap; free sets count the
                           // open tail gap N - t_last as well
};
ZeroSetSummary summarize_contacts(const ContactSet& cs);

// True when some contact lies in [(t - eps) N, (t + eps) N].
bool covers(const ContactSet& cs, double t, double eps);

enum class RefLaw { arcsine, half_normal, folded_normal, uniform01 };
RefLaw ref_law_from_string(const std::string& s);  // throws on unknown id
std::string ref_law_name(RefLaw law);
double ref_cdf(RefLaw law, double x, double param);

struct StatReport {
  std::string test;
  std::string law;
  double param = 0.0;
  std::int64_t samples = 0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

// One-sample Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)|.
double ks_statistic(std::vector<double> xs, RefLaw law, double param);

// KS report: pass requires statistic < threshold AND samples >= min_samples
// (an under-sampled report can never pass).
StatReport ks_report(const std::string& name, std::vector<double> xs,
                     RefLaw law, double param, double threshold,
                     std::int64_t min_samples = 100);

// |X(t)| marginal of the rescaled pinned walk: half-normal(sqrt(t)) for the
// free case (t in (0, 1]), folded normal with sd sqrt(t (1-t)) for the
// constrained bridge (t in (0, 1)).
StatReport path_marginal_report(const std::string& name,
                                std::vector<double> abs_values, char alpha,
                                double t, double threshold);

// mean of exp(eps * scaled_count) with its standard error.
struct MgfEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};
MgfEstimate local_time_mgf(const std::vector<double>& scaled_counts,
                           double eps);
// Same, from raw contact sets (all must share the free boundary type; a mix
// of boundary types would average incompatible measures).
MgfEstimate local_time_mgf(const std::vector<ContactSet>& sets, double eps);

// Path modulus over windows |s - t| <= delta in rescaled time, and the
// excursion-restricted variant (pairs inside one contact-free run only).
struct OscillationStat {
  double gamma = 0.0;
  double gamma_tilde = 0.0;
};
OscillationStat oscillation_stat(const PathSample& path, double delta);

// Exponential-law MGF closed-form check: for X ~ Exp(r) and eps_N = N^{-1/2},
// E e^{+-eps_N X} = r / (r -+ eps_N); the deviation from 1 must shrink as N
// grows on both branches, and a Monte Carlo estimate at the largest N must
// agree within 5 standard errors.
StatReport mgf_lemma_property_test(RngStream& rng);

// Upper-tail chi-square probability.
double chi_square_pvalue(double stat, int dof);

// Pearson goodness-of-fit with small-cell pooling: cells whose expected
// count falls below min_expected are merged into one pooled cell.
struct ChiSquareResult {
  double stat = 0.0;
  int dof = 0;
  double pvalue = 0.0;
  int cells = 0;
};
ChiSquareResult chi_square_gof(const std::vector<std::int64_t>& observed,
                               const std::vector<double>& probs,
                               double min_expected = 5.0);

}  // namespace swlab
