#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ghk/gould_hopper.hpp"
#include "test_support.hpp"

using namespace ghk;
using ghk::testing::exact;

namespace {

// H_0 = 1, H_1 = 2x, H_{n+1} = 2x H_n - 2n H_{n-1}.
Scalar hermite_by_recurrence(unsigned n, const Scalar& x) {
  const Mode mode = x.mode();
  Scalar prev = Scalar::one(mode);
  if (n == 0) return prev;
  Scalar cur = Scalar::from_int(2, mode) * x;
  for (unsigned k = 1; k < n; ++k) {
    Scalar next = Scalar::from_int(2, mode) * x * cur - Scalar::from_int(2 * k, mode) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

} // namespace

TEST(GouldHopper, DirectSumExamples) {
  EXPECT_EQ(gh_eval(0, exact(7), exact(3)), exact(1));
  EXPECT_EQ(gh_eval(2, exact(1), exact(1)), exact(3));  // x^2 + 2p
  EXPECT_EQ(gh_eval(3, exact(2), exact(-1)), exact(-4)); // x^3 + 6px
  EXPECT_EQ(gh_eval(4, exact(0), exact(1)), exact(12)); // 4!/(2! 0!) p^2
}

TEST(GouldHopper, LowDegreeClosedForms) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const Scalar x = ghk::testing::random_exact(rng, trial % 2 == 0);
    const Scalar p = ghk::testing::random_exact(rng, trial % 3 == 0);
    const auto c = [](long long v) { return Scalar::from_int(v, Mode::exact); };
    EXPECT_EQ(gh_eval(1, x, p), x);
    EXPECT_EQ(gh_eval(2, x, p), x * x + c(2) * p);
    EXPECT_EQ(gh_eval(3, x, p), x.pow(3) + c(6) * p * x);
    EXPECT_EQ(gh_eval(4, x, p), x.pow(4) + c(12) * p * x * x + c(12) * p * p);
    EXPECT_EQ(gh_eval(5, x, p), x.pow(5) + c(20) * p * x.pow(3) + c(60) * p * p * x);
  }
}

TEST(GouldHopper, RecurrenceExamples) {
  EXPECT_EQ(gh_eval_recurrence(1, exact(5), exact(9)), exact(5));
  EXPECT_EQ(gh_eval_recurrence(2, exact(1), exact(1)), exact(3));
  EXPECT_EQ(gh_eval_recurrence(3, exact(2), exact(-1)), exact(-4));
  EXPECT_EQ(gh_eval_recurrence(0, exact(2), exact(-1)), exact(1));
}

TEST(GouldHopper, MomentOracleExamples) {
  const Scalar x = exact(13, 7);
  EXPECT_EQ(gh_moment_oracle(1, x, exact(5)), x);
  EXPECT_EQ(gh_moment_oracle(2, exact(1), exact(1)), exact(3));
  EXPECT_EQ(gh_moment_oracle(4, exact(0), exact(1)), exact(12)); // (2p)^2 E N^4
}

TEST(GouldHopper, ThreeRoutesAgreeExactly) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Scalar x = ghk::testing::random_exact(rng, trial % 4 == 0);
    const Scalar p = ghk::testing::random_exact(rng, trial % 5 == 0);
    const auto table = gh_table(50, x, p);
    for (unsigned m = 0; m <= 50; m += (m < 10 ? 1 : 7)) {
      const Scalar direct = gh_eval(m, x, p);
      EXPECT_EQ(direct, table[m]) << "m=" << m;
      EXPECT_EQ(direct, gh_moment_oracle(m, x, p)) << "m=" << m;
    }
  }
}

TEST(GouldHopper, Parity) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const Scalar x = ghk::testing::random_exact(rng);
    const Scalar p = ghk::testing::random_exact(rng);
    for (unsigned m = 0; m <= 20; ++m) {
      const Scalar sign = Scalar::from_int(m % 2 ? -1 : 1, Mode::exact);
      EXPECT_EQ(gh_eval(m, -x, p), sign * gh_eval(m, x, p));
    }
  }
}

TEST(GouldHopper, ZeroParameterIsMonomial) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Scalar x = ghk::testing::random_exact(rng, trial % 2 == 0);
    for (unsigned m = 0; m <= 20; ++m) EXPECT_EQ(gh_eval(m, x, exact(0)), x.pow(m));
  }
}

TEST(GouldHopper, FloatMatchesExact) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Scalar x = ghk::testing::random_exact(rng, false, 10);
    const Scalar p = ghk::testing::random_exact(rng, false, 10);
    const Scalar xf = x.to_mode(Mode::floating), pf = p.to_mode(Mode::floating);
    for (unsigned m = 0; m <= 30; ++m) {
      const auto ref = gh_eval(m, x, p).approx();
      const auto got = gh_eval_recurrence(m, xf, pf).float_value();
      // Relative to the magnitude of the terms, since g_m may itself cancel.
      const double scale = std::abs(gh_eval(m, Scalar::floating(std::abs(xf.approx())),
                                            Scalar::floating(std::abs(pf.approx())))
                                        .float_value());
      EXPECT_LE(std::abs(got - ref), 1e-12 * std::max(scale, 1.0)) << "m=" << m << " x=" << x.to_string();
    }
  }
}

TEST(GouldHopper, MultiIndexProduct) {
  const std::vector<Scalar> ab{exact(5), exact(-2)};
  const std::vector<Scalar> x{exact(3), exact(4)};
  EXPECT_EQ(gh_multi_eval({0, 0}, ab, exact(7)), exact(1));
  EXPECT_EQ(gh_multi_eval({1, 1}, x, exact(1)), exact(12));
  EXPECT_EQ(gh_multi_eval({2, 0}, x, exact(1)), exact(11));
  EXPECT_THROW(gh_multi_eval({1, 1, 1}, x, exact(1)), dimension_mismatch);
}

TEST(GouldHopper, ModeMismatchIsAnError) {
  EXPECT_THROW(gh_eval(2, exact(1), Scalar::floating(1.0)), mode_mismatch);
  EXPECT_THROW(gh_eval_recurrence(2, Scalar::floating(1.0), exact(1)), mode_mismatch);
}

TEST(Hermite, Examples) {
  EXPECT_EQ(hermite_eval(0, exact(9)), exact(1));
  EXPECT_EQ(hermite_eval(2, exact(1)), exact(2));
  EXPECT_EQ(hermite_eval(3, exact(1)), exact(-4));
  EXPECT_EQ(hermite_eval(3, exact(1)), gh_eval(3, exact(2), exact(-1)));
}

TEST(Hermite, MatchesIndependentRecurrence) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const Scalar x = ghk::testing::random_exact(rng, trial % 3 == 0);
    for (unsigned n = 0; n <= 30; ++n) EXPECT_EQ(hermite_eval(n, x), hermite_by_recurrence(n, x)) << n;
  }
}
