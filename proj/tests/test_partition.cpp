#include <stdexcept>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "swlab/kernels.hpp"
#include "swlab/model.hpp"
#include "swlab/partition.hpp"
#include "swlab/pinning.hpp"
#include "swlab/series.hpp"

using namespace swlab;

namespace {
double q_ref(int n) { return std::pow(n, -1.5) / zeta_three_halves(); }
}  // namespace

TEST_CASE("renewal: small-N hand computation") {
  const double beta = beta_c_exact() + 0.17;
  const double u = std::exp(0.17);
  const RenewalTables rt = renewal_tables(beta, 3);
  CHECK(std::exp(rt.log_q[1]) == doctest::Approx(q_ref(1)).epsilon(1e-13));
  CHECK(q_ref(1) == doctest::Approx(0.3827926).epsilon(1e-6));
  const double zc1 = u * q_ref(1);
  const double zc2 = u * q_ref(2) + u * u * q_ref(1) * q_ref(1);
  const double zc3 = u * q_ref(3) + 2.0 * u * u * q_ref(1) * q_ref(2) +
                     u * u * u * std::pow(q_ref(1), 3);
  CHECK(std::exp(rt.log_zc[0]) == doctest::Approx(1.0));
  CHECK(std::exp(rt.log_zc[1]) == doctest::Approx(zc1).epsilon(1e-12));
  CHECK(std::exp(rt.log_zc[2]) == doctest::Approx(zc2).epsilon(1e-12));
  CHECK(std::exp(rt.log_zc[3]) == doctest::Approx(zc3).epsilon(1e-12));
  // Free side: Zf(N) = sum_t Zc(t) P(N - t), the t = N term with P(0) = 1.
  const double zf2 = survival_exact(2) + zc1 * survival_exact(1) + zc2;
  CHECK(std::exp(rt.log_zf[2]) == doctest::Approx(zf2).epsilon(1e-12));
  CHECK(std::exp(rt.log_p[1]) == doctest::Approx(0.5));
}

TEST_CASE("renewal: agrees with subset enumeration") {
  for (double db : {-0.25, 0.0, 0.25}) {
    const double beta = beta_c_exact() + db;
    const RenewalTables rt = renewal_tables(beta, 12);
    for (char alpha : {'c', 'f'}) {
      const double enumerated = oracle::renewal_partition_enum(beta, 12, alpha);
      const double table =
          std::exp(alpha == 'c' ? rt.log_zc[12] : rt.log_zf[12]);
      CHECK(table == doctest::Approx(enumerated).epsilon(1e-12));
    }
  }
}

TEST_CASE("renewal: critical partition stays bounded") {
  const RenewalTables rt = renewal_tables(beta_c_exact(), 4096);
  for (int n = 1; n <= 4096; ++n) {
    // Zc(N) is a renewal hit probability at criticality.
    CHECK(std::exp(rt.log_zc[n]) <= 1.0 + 1e-12);
    CHECK(std::exp(rt.log_zf[n]) <= 2.0);
    CHECK(std::exp(rt.log_zf[n]) >= 0.5);
  }
  // Hit probabilities decay ~ n^{-1/2}; the free value settles to a constant.
  CHECK(std::exp(rt.log_zc[4096]) < std::exp(rt.log_zc[16]));
  CHECK(std::exp(rt.log_zf[4096]) ==
        doctest::Approx(std::exp(rt.log_zf[2048])).epsilon(0.05));
}

TEST_CASE("renewal: gap tail") {
  CHECK(renewal_gap_tail(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(renewal_gap_tail(1) == doctest::Approx(1.0 - q_ref(1)).epsilon(1e-12));
  CHECK(renewal_gap_tail(100) ==
        doctest::Approx(power_tail_sum(0.0, 100) / zeta_three_halves())
            .epsilon(1e-12));
  CHECK(renewal_gap_tail(10) > renewal_gap_tail(11));
}

TEST_CASE("strip: N = 1 rows match a direct sum") {
  const IncrementModel m = gaussian_model();
  const double a = 0.3;
  const KernelTable kt = transfer_kernel(m, a, 4, 8);
  const SurvivalTable st = survival(m, a, 4, 8);
  const PinningFunction pin = make_constant_pinning(a, 0.4);
  const StripPartitionTable sp = strip_partition(pin, kt, st, 8);
  for (int idx = 0; idx <= sp.M; ++idx) {
    const double x = sp.position(idx);
    long double zc1 = 0.0L;
    for (int j = 0; j < sp.M; ++j) {
      zc1 += gaussian_density(sp.grid.x[j] - x) * sp.wexp_phi[j];
    }
    CHECK(std::exp(sp.log_zc(1, idx)) ==
          doctest::Approx(double(zc1)).epsilon(1e-11));
    const int sidx = idx == 0 ? st.index_zero() : st.index_mid(idx - 1);
    CHECK(std::exp(sp.log_zf(1, idx)) ==
          doctest::Approx(double(zc1) + st.value(1, sidx)).epsilon(1e-11));
  }
}

TEST_CASE("strip: DP equals subset enumeration") {
  const IncrementModel m = gaussian_model();
  const double a = 0.25;
  const KernelTable kt = transfer_kernel(m, a, 4, 8);
  const SurvivalTable st = survival(m, a, 4, 8);
  const std::vector<PinningFunction> pins = {
      make_constant_pinning(a, 0.2), make_smooth_bump_pinning(a),
      make_zero_pinning(a)};
  for (const PinningFunction& pin : pins) {
    const StripPartitionTable sp = strip_partition(pin, kt, st, 8);
    const oracle::StripEnumResult en =
        oracle::strip_partition_enum(pin, kt, st, 8);
    CHECK(std::exp(sp.log_zc_total) == doctest::Approx(en.zc).epsilon(1e-10));
    CHECK(std::exp(sp.log_zf_total) == doctest::Approx(en.zf).epsilon(1e-10));
    // Forward and backward accumulations are independent recursions.
    CHECK(sp.log_zc_total_forward ==
          doctest::Approx(sp.log_zc_total).epsilon(1e-10));
    CHECK(sp.log_zf_total_forward ==
          doctest::Approx(sp.log_zf_total).epsilon(1e-10));
  }
}

TEST_CASE("strip: partition is monotone in the pinning strength") {
  const IncrementModel m = gaussian_model();
  const double a = 0.2;
  const KernelTable kt = transfer_kernel(m, a, 4, 64);
  const SurvivalTable st = survival(m, a, 4, 64);
  const StripPartitionTable lo =
      strip_partition(make_constant_pinning(a, 0.1), kt, st, 64);
  const StripPartitionTable hi =
      strip_partition(make_constant_pinning(a, 0.6), kt, st, 64);
  for (int n = 1; n <= 64; ++n) {
    CHECK(lo.log_zc(n, 0) < hi.log_zc(n, 0));
    CHECK(lo.log_zf(n, 0) < hi.log_zf(n, 0));
  }
}

TEST_CASE("strip: zero pinning at small width is a single-contact sum") {
  // With phi = 0 every contact costs a factor ~ w = a/M, so as a -> 0 the
  // constrained partition collapses to its one-contact term a f_N(0, 0).
  const IncrementModel m = gaussian_model();
  const double a = 0.01;
  const KernelTable kt = transfer_kernel(m, a, 4, 8);
  const SurvivalTable st = survival(m, a, 4, 8);
  const StripPartitionTable sp =
      strip_partition(make_zero_pinning(a), kt, st, 8);
  CHECK(std::exp(sp.log_zc_total) ==
        doctest::Approx(a * closed_form_fn(8)).epsilon(0.05));
}

TEST_CASE("density ratio: matches enumerated set probabilities") {
  const IncrementModel m = gaussian_model();
  const double a = 0.25;
  const int N = 6;
  const KernelTable kt = transfer_kernel(m, a, 3, N);
  const SurvivalTable st = survival(m, a, 3, N);
  const PinningFunction pin = make_constant_pinning(a, 0.3);
  const StripPartitionTable sp = strip_partition(pin, kt, st, N);
  const RenewalTables rt = renewal_tables(beta_c_exact() + 0.1, N);
  for (char alpha : {'c', 'f'}) {
    const std::vector<double> strip_probs =
        oracle::strip_set_probs_enum(pin, kt, st, N, alpha);
    const std::vector<double> renewal_probs =
        oracle::renewal_set_probs_enum(rt.beta, N, alpha);
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
      if (alpha == 'c' && !(mask >> (N - 1) & 1u)) continue;
      std::vector<int> times = {0};
      for (int t = 1; t <= N; ++t) {
        if (mask >> (t - 1) & 1u) times.push_back(t);
      }
      const DensityRatio dr =
          contact_set_density_ratio(sp, kt, rt, times, alpha);
      CHECK(std::exp(dr.log_strip) ==
            doctest::Approx(strip_probs[mask]).epsilon(1e-9));
      CHECK(std::exp(dr.log_renewal) ==
            doctest::Approx(renewal_probs[mask]).epsilon(1e-9));
      CHECK(dr.log_ratio ==
            doctest::Approx(dr.log_strip - dr.log_renewal).epsilon(1e-10));
    }
  }
}

TEST_CASE("density ratio: input validation") {
  const IncrementModel m = gaussian_model();
  const double a = 0.25;
  const KernelTable kt = transfer_kernel(m, a, 3, 6);
  const SurvivalTable st = survival(m, a, 3, 6);
  const PinningFunction pin = make_constant_pinning(a, 0.0);
  const StripPartitionTable sp = strip_partition(pin, kt, st, 6);
  const RenewalTables rt = renewal_tables(beta_c_exact(), 6);
  CHECK_THROWS_AS((void)contact_set_density_ratio(sp, kt, rt, {1, 3}, 'c'),
                  std::invalid_argument);  // must start at 0
  CHECK_THROWS_AS((void)contact_set_density_ratio(sp, kt, rt, {0, 3}, 'c'),
                  std::invalid_argument);  // constrained must end at N
  CHECK_THROWS_AS((void)contact_set_density_ratio(sp, kt, rt, {0, 3, 3}, 'f'),
                  std::invalid_argument);  // strictly increasing
}

TEST_CASE("partition: size guards") {
  CHECK_THROWS_AS((void)oracle::renewal_partition_enum(0.0, 21, 'c'),
                  std::invalid_argument);
  const IncrementModel m = gaussian_model();
  const KernelTable kt = transfer_kernel(m, 0.2, 4, 8);
  const SurvivalTable st = survival(m, 0.3, 4, 8);  // width mismatch
  CHECK_THROWS_AS(
      (void)strip_partition(make_zero_pinning(0.2), kt, st, 8),
      std::invalid_argument);
}
