#include <stdexcept>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "swlab/kernels.hpp"
#include "swlab/model.hpp"
#include "swlab/rng.hpp"

using namespace swlab;

TEST_CASE("kernels: closed forms") {
  CHECK(closed_form_fn(1) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
  // f_2 = 2^{-3/2}/sqrt(2 pi) = 1/(4 sqrt(pi))
  CHECK(closed_form_fn(2) ==
        doctest::Approx(0.25 / std::sqrt(std::numbers::pi)).epsilon(1e-15));
  CHECK(survival_exact(0) == doctest::Approx(1.0));
  CHECK(survival_exact(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(survival_exact(2) == doctest::Approx(0.375).epsilon(1e-15));
  // P(n) = P(n-1) * (2n-1)/(2n)
  CHECK(survival_exact(10) ==
        doctest::Approx(survival_exact(9) * 19.0 / 20.0).epsilon(1e-15));
}

TEST_CASE("kernels: a = 0 table reproduces n^{-3/2}/sqrt(2 pi)") {
  const IncrementModel m = gaussian_model();
  const KernelTable kt = transfer_kernel(m, 0.0, 0, 48);
  REQUIRE(kt.L == 1);
  for (int n = 1; n <= 48; ++n) {
    CHECK(kt.value(n, 0, 0) ==
          doctest::Approx(closed_form_fn(n)).epsilon(1e-4));
  }
  // The first step is the plain increment density, no quadrature involved.
  CHECK(kt.value(1, 0, 0) == doctest::Approx(closed_form_fn(1)).epsilon(1e-14));
}

TEST_CASE("kernels: brute-force oracle agreement for n <= 4") {
  const IncrementModel m = gaussian_model();
  const double a = 0.3;
  const KernelTable kt = transfer_kernel(m, a, 4, 8);
  for (int n = 2; n <= 4; ++n) {
    for (int i = 0; i < kt.L; ++i) {
      for (int j = 0; j < kt.L; ++j) {
        const double oracle = oracle_fn_bruteforce(m, a, kt.xs[i], kt.xs[j], n);
        CHECK(kt.value(n, i, j) == doctest::Approx(oracle).epsilon(2e-6));
      }
    }
  }
  CHECK_THROWS_AS(
      (void)oracle_fn_bruteforce(m, a, 0.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("kernels: symmetry and positivity") {
  const IncrementModel m = gaussian_model();
  const KernelTable kt = transfer_kernel(m, 0.4, 6, 32);
  for (int n = 1; n <= 32; ++n) {
    for (int i = 0; i < kt.L; ++i) {
      for (int j = 0; j <= i; ++j) {
        CHECK(kt.value(n, i, j) > 0.0);
        CHECK(std::abs(kt.value(n, i, j) - kt.value(n, j, i)) < 1e-10);
      }
    }
  }
}

TEST_CASE("kernels: tail extrapolation is continuous and 3/2-stable") {
  const IncrementModel m = gaussian_model();
  const KernelTable kt = transfer_kernel(m, 0.2, 4, 64);
  // Stored values and the tail model agree where they meet.
  CHECK(kt.eval(64, 0, 0) == doctest::Approx(kt.value(64, 0, 0)));
  CHECK(kt.eval(65, 0, 0) ==
        doctest::Approx(kt.value(64, 0, 0) *
                        std::pow(65.0 / 64.0, -1.5)).epsilon(5e-3));
  // Tail scales as n^{-3/2}: doubling n divides by 2 sqrt(2).
  CHECK(kt.eval(512, 0, 0) / kt.eval(1024, 0, 0) ==
        doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("kernels: quadrature refinement stability") {
  const IncrementModel m = gaussian_model();
  KernelOptions fine;
  fine.h = 0.03125;
  const KernelTable base = transfer_kernel(m, 0.3, 4, 8);
  const KernelTable ref = transfer_kernel(m, 0.3, 4, 8, fine);
  for (int n = 1; n <= 8; ++n) {
    for (int i = 0; i < base.L; ++i) {
      for (int j = 0; j < base.L; ++j) {
        CHECK(base.value(n, i, j) ==
              doctest::Approx(ref.value(n, i, j)).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("kernels: kernel_row_mid points at the midpoint columns") {
  const IncrementModel m = gaussian_model();
  const KernelTable kt = transfer_kernel(m, 0.3, 4, 16);
  double scale = 2.0;
  const double* row = kernel_row_mid(kt, 5, kt.index_zero(), &scale);
  CHECK(scale == 2.0);  // in-range t leaves the scale alone
  for (int j = 0; j < kt.M; ++j) {
    CHECK(row[j] == kt.value(5, kt.index_zero(), kt.index_mid(j)));
  }
  scale = 1.0;
  const double* tail = kernel_row_mid(kt, 32, kt.index_a(), &scale);
  CHECK(scale == doctest::Approx(std::pow(32.0, -1.5)));
  for (int j = 0; j < kt.M; ++j) {
    CHECK(tail[j] * scale ==
          doctest::Approx(kt.eval(32, kt.index_a(), kt.index_mid(j))));
  }
}

TEST_CASE("kernels: argument validation") {
  const IncrementModel m = gaussian_model();
  CHECK_THROWS_AS((void)transfer_kernel(m, -0.1, 4, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)transfer_kernel(m, 0.1, 0, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)transfer_kernel(m, 0.1, 4, 0), std::invalid_argument);
}

TEST_CASE("survival: boundary identity and monotonicity") {
  const IncrementModel m = gaussian_model();
  const SurvivalTable st = survival(m, 0.25, 6, 64);
  for (int n = 1; n <= 64; ++n) {
    // Started on the barrier the strip plays no role: Sparre-Andersen holds
    // for every continuous symmetric increment law.
    CHECK(st.value(n, st.index_a()) ==
          doctest::Approx(survival_exact(n)).epsilon(1e-3));
    for (int i = 0; i < st.L; ++i) {
      CHECK(st.value(n, i) > 0.0);
      CHECK(st.value(n, i) <= 1.0);
      if (n > 1) CHECK(st.value(n, i) <= st.value(n - 1, i));  // nested events
      if (i > 0) CHECK(st.value(n, i) >= st.value(n, i - 1));  // higher start
    }
  }
  CHECK(st.eval(0, 0) == doctest::Approx(1.0));
  // Tail model decays like n^{-1/2}.
  CHECK(st.eval(4096, 0) / st.eval(16384, 0) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("survival: deficiency DP tracks the exact half-line values") {
  const IncrementModel m = gaussian_model();
  // a = 0: survival above 0 from 0 is exactly the Sparre-Andersen sequence.
  const SurvivalTable st = survival(m, 0.0, 0, 128);
  for (int n = 1; n <= 128; ++n) {
    CHECK(st.value(n, 0) == doctest::Approx(survival_exact(n)).epsilon(2e-4));
  }
}

TEST_CASE("ladder: estimate behaves like P(H1 >= a)") {
  const IncrementModel m = gaussian_model();
  RngStream rng(99, 0);
  const LadderEstimate small = ladder_constant(m, 0.1, 0.0, 20000, rng);
  const LadderEstimate large = ladder_constant(m, 0.6, 0.0, 20000, rng);
  CHECK(small.estimate > 0.0);
  CHECK(small.estimate < 1.0);
  CHECK(small.std_error > 0.0);
  CHECK(small.samples == 20000);
  // Monotone in a, well beyond joint noise.
  CHECK(small.estimate - large.estimate >
        4.0 * (small.std_error + large.std_error));
  // Restarts are the ~0.56/sqrt(cap) conditioning defect, not a failure mode.
  CHECK(small.restarts < small.samples / 100);
  // Starting at x = a makes the event trivial.
  const LadderEstimate unit = ladder_constant(m, 0.3, 0.3, 100, rng);
  CHECK(unit.estimate == doctest::Approx(1.0));
  CHECK(unit.std_error == doctest::Approx(0.0));
}

TEST_CASE("ladder: consistent with the survival ratio limit") {
  // P^a_0(n)/P(n) decreases to C^a(0); the MC estimate must sit below every
  // finite-n ratio, up to Monte Carlo noise.
  const IncrementModel m = gaussian_model();
  const double a = 0.2;
  const SurvivalTable st = survival(m, a, 6, 256);
  double ratio_min = 1.0;
  for (int n = 1; n <= 256; ++n) {
    const double r = st.value(n, st.index_zero()) / survival_exact(n);
    CHECK(r <= 1.0 + 1e-12);
    ratio_min = std::min(ratio_min, r);
  }
  RngStream rng(7, 1);
  const LadderEstimate lad = ladder_constant(m, a, 0.0, 40000, rng);
  CHECK(lad.estimate < ratio_min + 6.0 * lad.std_error);
  CHECK(lad.estimate > 0.3);  // P(H1 >= 0.2) is clearly macroscopic
}
