#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ghk/grids.hpp"
#include "ghk/identities.hpp"
#include "test_support.hpp"

using namespace ghk;
using ghk::testing::exact;
using ghk::testing::q;

namespace {

using Vec = std::vector<Scalar>;

// Left side of the Graczyk identity for n = 2 with explicit loops instead of
// the composition enumerator and the recurrence.
Scalar graczyk_lhs_n2(unsigned total, const Vec& u, const Vec& v, const Scalar& p) {
  Scalar sum = exact(0);
  for (unsigned a = 0; a <= total; ++a) {
    const unsigned b = total - a;
    const Scalar num = gh_eval(a, u[0], p) * gh_eval(b, u[1], p) * gh_eval(a, v[0], p) * gh_eval(b, v[1], p);
    sum += num / Scalar::from_int(factorial(a) * factorial(b), Mode::exact);
  }
  return sum;
}

} // namespace

TEST(Polarization, Examples) {
  const Vec u{exact(3), exact(4)};
  auto pair = polarization_pair(u, u);
  EXPECT_EQ(pair.x, exact(5));
  EXPECT_EQ(pair.y, exact(5));

  pair = polarization_pair(Vec{exact(5), exact(12)}, Vec{exact(0), exact(0)});
  EXPECT_EQ(pair.x, exact(13));
  EXPECT_EQ(pair.y, exact(0));

  const Vec e1{Scalar::floating(1), Scalar::floating(0)}, e2{Scalar::floating(0), Scalar::floating(1)};
  pair = polarization_pair(e1, e2);
  EXPECT_NEAR(pair.x.approx().real(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(pair.y, Scalar::floating(0.0));
}

TEST(Polarization, Errors) {
  EXPECT_THROW(polarization_pair(Vec{exact(1), exact(1)}, Vec{exact(1), exact(2)}), not_representable);
  EXPECT_THROW(polarization_pair(Vec{exact(1)}, Vec{exact(1), exact(2)}), dimension_mismatch);
  EXPECT_THROW(polarization_pair(Vec{q("i")}, Vec{exact(1)}), domain_error);
}

TEST(Polarization, PairInvariants) {
  for (std::size_t n : {1u, 2u, 3u, 4u})
    for (const auto& vp : polarizable_pairs(n, 10)) {
      const auto pair = polarization_pair(vp.u, vp.v);
      EXPECT_GE(pair.x.approx().real(), std::abs(pair.y.approx().real()));
      EXPECT_EQ(pair.x * pair.x + pair.y * pair.y, bilinear(vp.u, vp.u) + bilinear(vp.v, vp.v));
      EXPECT_EQ(pair.x * pair.y, bilinear(vp.u, vp.v));
    }
}

TEST(Polarization, MatrixExamples) {
  const Matrix a(2, 2, Vec{exact(3), exact(0), exact(0), exact(0)});
  const Matrix b(2, 2, Vec{exact(0), exact(4), exact(0), exact(0)});
  auto pair = matrix_polarization(a, b);
  EXPECT_EQ(pair.x, exact(5));
  EXPECT_EQ(pair.y, exact(0));

  const Matrix c(2, 3, Vec{exact(2), exact(3), exact(0), exact(0), exact(6), exact(0)}); // norm 7
  pair = matrix_polarization(c, c);
  EXPECT_EQ(pair.x, exact(7));
  EXPECT_EQ(pair.y, exact(7));
  pair = matrix_polarization(c, Matrix(2, 3, Mode::exact));
  EXPECT_EQ(pair.x, exact(7));
  EXPECT_EQ(pair.y, exact(0));

  EXPECT_THROW(matrix_polarization(a, c), dimension_mismatch);
}

TEST(Graczyk, WorkedPoint) {
  const Vec u{exact(3), exact(4)};
  const Scalar p = exact(1);
  const Scalar lhs = graczyk_lhs(2, u, u, p);
  EXPECT_EQ(lhs, exact(733, 2)); // 121/2 + 144 + 162
  const auto pair = polarization_pair(u, u);
  EXPECT_EQ(graczyk_rhs(2, pair, 2, p), exact(733, 2)); // 27^2/2 + 4 * (1/2)
  EXPECT_TRUE(graczyk_report(2, u, u, p, 0).verdict == Verdict::exact_pass);
}

TEST(Graczyk, DegenerateCases) {
  const Vec u{exact(1, 2), exact(-3)}, v{exact(2), exact(5, 7)};
  const Scalar p = exact(-3, 2);
  EXPECT_EQ(graczyk_lhs(0, u, v, p), exact(1));
  EXPECT_EQ(graczyk_lhs(1, u, v, p), bilinear(u, v));
  const PolarizationPair pair{exact(7, 3), exact(-1, 4)};
  EXPECT_EQ(graczyk_rhs(0, pair, 4, p), exact(1));
  for (unsigned total = 0; total <= 6; ++total)
    EXPECT_EQ(graczyk_rhs(total, pair, 1, p),
              gh_eval(total, pair.x, p) * gh_eval(total, pair.y, p) / Scalar::from_int(factorial(total), Mode::exact));
}

TEST(Graczyk, LhsMatchesExplicitLoops) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec u{ghk::testing::random_exact(rng), ghk::testing::random_exact(rng)};
    const Vec v{ghk::testing::random_exact(rng), ghk::testing::random_exact(rng)};
    const Scalar p = ghk::testing::random_exact(rng, trial % 2 == 0);
    for (unsigned total = 0; total <= 6; ++total) EXPECT_EQ(graczyk_lhs(total, u, v, p), graczyk_lhs_n2(total, u, v, p));
  }
}

TEST(Graczyk, HoldsOnGeneratedPairs) {
  for (std::size_t n : {1u, 2u, 3u, 4u})
    for (const auto& vp : polarizable_pairs(n, 10))
      for (const char* p : {"-2", "1/3", "2+i"})
        for (unsigned total = 0; total <= 5; ++total) {
          const auto r = graczyk_report(total, vp.u, vp.v, q(p), 0);
          EXPECT_EQ(r.verdict, Verdict::exact_pass) << r.lhs.to_string() << " vs " << r.rhs.to_string();
        }
}

TEST(Graczyk, FloatModeOnIrrationalNorms) {
  const Vec u{Scalar::floating(1), Scalar::floating(1)}, v{Scalar::floating(1), Scalar::floating(2)};
  for (unsigned total = 0; total <= 6; ++total) {
    const auto r = graczyk_report(total, u, v, Scalar::floating(0.75), 1e-12);
    EXPECT_EQ(r.verdict, Verdict::within_tolerance) << r.relative_residual();
  }
}

TEST(ComplexGivens, Examples) {
  EXPECT_EQ(complex_givens(3, 0, 2, exact(0)).matrix(), Matrix::identity(3, Mode::exact));

  auto o = complex_givens(2, 0, 1, exact(1, 2));
  EXPECT_EQ(o(0, 0), exact(3, 5));
  EXPECT_EQ(o(1, 0), exact(4, 5));
  EXPECT_EQ(o(0, 1), exact(-4, 5));

  o = complex_givens(2, 0, 1, q("1/2i"));
  const Scalar c = o(0, 0), s = o(1, 0);
  EXPECT_EQ(c, exact(5, 3));
  EXPECT_EQ(s, q("4/3i"));
  EXPECT_EQ(c * c + s * s, exact(1));
  EXPECT_TRUE(orthogonality_check(o.matrix()));

  EXPECT_THROW(complex_givens(2, 0, 1, q("i")), domain_error);
  EXPECT_THROW(complex_givens(2, 1, 1, exact(1)), domain_error);
  EXPECT_THROW(complex_givens(2, 0, 2, exact(1)), domain_error);
}

TEST(Orthogonality, Examples) {
  EXPECT_TRUE(orthogonality_check(Matrix::identity(4, Mode::exact)));
  EXPECT_FALSE(orthogonality_check(Matrix(2, 2, Vec{exact(1), exact(1), exact(0), exact(1)})));
  EXPECT_FALSE(orthogonality_check(Matrix(2, 3, Mode::exact)));
  const auto o = complex_givens(3, 0, 1, q("1+i")) * complex_givens(3, 1, 2, q("2-1/3i"));
  EXPECT_TRUE(orthogonality_check(o.matrix()));
  EXPECT_TRUE(orthogonality_check(o.matrix().to_mode(Mode::floating)));
  EXPECT_THROW(ComplexOrthogonal::from_matrix(Matrix(2, 2, Vec{exact(1), exact(1), exact(0), exact(1)})), domain_error);
}

TEST(ComplexRotation, PreservesBilinearForm) {
  std::mt19937_64 rng(59);
  const auto family = rotation_family(3, {"1/2", "2", "1/2i", "1+i"}, 2, Mode::exact);
  for (std::size_t k = 0; k < family.size(); k += 7) {
    const Vec u{ghk::testing::random_exact(rng), ghk::testing::random_exact(rng), ghk::testing::random_exact(rng)};
    const Vec v{ghk::testing::random_exact(rng), ghk::testing::random_exact(rng), ghk::testing::random_exact(rng)};
    EXPECT_EQ(bilinear_invariance_report(family[k], u, v, 0).verdict, Verdict::exact_pass);
    EXPECT_TRUE(orthogonality_check(family[k].matrix()));
  }
}

TEST(RotationSumRule, Examples) {
  const Vec x{exact(1), exact(2)};
  const Scalar p = exact(1, 3);
  for (unsigned m = 0; m <= 5; ++m) {
    const auto r = rotation_sumrule(m, ComplexOrthogonal::identity(2, Mode::exact), 1, x, p, 0);
    EXPECT_EQ(r.lhs, gh_eval(m, x[1], p));
    EXPECT_EQ(r.verdict, Verdict::exact_pass);
  }

  auto r = rotation_sumrule(1, complex_givens(2, 0, 1, exact(1, 2)), 0, Vec{exact(7), exact(-2)}, p, 0);
  EXPECT_EQ(r.lhs, exact(3 * 7 + 4 * 2, 5)); // (3 x1 - 4 x2) / 5
  EXPECT_EQ(r.verdict, Verdict::exact_pass);

  r = rotation_sumrule(2, complex_givens(2, 0, 1, q("1/2i")), 0, x, p, 0);
  EXPECT_EQ(r.verdict, Verdict::exact_pass);
  EXPECT_TRUE(r.residual.is_zero());

  EXPECT_THROW(rotation_sumrule(2, complex_givens(2, 0, 1, exact(2)), 2, x, p, 0), domain_error);
  EXPECT_THROW(rotation_sumrule(2, complex_givens(3, 0, 1, exact(2)), 0, x, p, 0), dimension_mismatch);
}

TEST(RotationSumRule, ProductsOfGivens) {
  const Vec x{q("3/2"), q("-1"), q("1/3+i")};
  for (const auto& o : rotation_family(3, {"1/2", "1+i"}, 2, Mode::exact))
    for (unsigned m = 0; m <= 4; ++m)
      for (std::size_t row = 0; row < 3; ++row)
        EXPECT_EQ(rotation_sumrule(m, o, row, x, q("-2/5"), 0).verdict, Verdict::exact_pass);
}

TEST(CoeffC, Examples) {
  const Scalar c = exact(3, 5), s = exact(4, 5);
  EXPECT_EQ(coeff_C(1, 0, 1, c, s), c);
  EXPECT_EQ(coeff_C(0, 1, 1, c, s), s);
  EXPECT_EQ(coeff_C(1, 0, 0, c, s), -s);
  for (unsigned m1 = 0; m1 <= 4; ++m1)
    for (unsigned m2 = 0; m2 <= 4; ++m2)
      for (unsigned r = 0; r <= m1 + m2; ++r)
        EXPECT_EQ(coeff_C(m1, m2, r, exact(1), exact(0)), exact(r == m1 ? 1 : 0));
  EXPECT_THROW(coeff_C(1, 1, 3, c, s), domain_error);
}

TEST(CoeffC, BinomialSpecialization) {
  std::mt19937_64 rng(61);
  for (const char* t : {"1/2", "3/2", "1/2i", "1+i"}) {
    const auto [c, s] = cayley_pair(q(t));
    for (int point = 0; point < 5; ++point) {
      const Scalar x = ghk::testing::random_exact(rng), y = ghk::testing::random_exact(rng);
      for (unsigned m1 = 0; m1 <= 5; ++m1)
        for (unsigned m2 = 0; m2 <= 5; ++m2)
          EXPECT_EQ(factorization_binomial_report(m1, m2, c, s, x, y, 0).verdict, Verdict::exact_pass);
    }
  }
}

TEST(Factorization, Examples) {
  const Scalar x = exact(1), y = exact(2), p = exact(-1, 2);
  for (unsigned m1 = 0; m1 <= 3; ++m1)
    for (unsigned m2 = 0; m2 <= 3; ++m2) {
      const auto r = factorization_sumrule(m1, m2, exact(1), exact(0), x, y, p, 0);
      EXPECT_EQ(r.lhs, gh_eval(m1, x, p) * gh_eval(m2, y, p));
      EXPECT_EQ(r.verdict, Verdict::exact_pass);
    }

  const Scalar c = exact(3, 5), s = exact(4, 5);
  auto r = factorization_sumrule(0, 1, c, s, x, y, p, 0);
  EXPECT_EQ(r.lhs, s * x + c * y);
  EXPECT_EQ(r.verdict, Verdict::exact_pass);

  r = factorization_sumrule(2, 1, c, s, x, y, p, 0);
  EXPECT_TRUE(r.residual.is_zero());

  // A pair that is not on the complex unit circle is rejected.
  EXPECT_THROW(factorization_sumrule(1, 1, exact(1), exact(1), x, y, p, 0), domain_error);
}

TEST(Factorization, ComplexCayleyPairs) {
  for (const char* t : {"1/2i", "1+i", "2-1/3i"}) {
    const auto [c, s] = cayley_pair(q(t));
    for (unsigned m1 = 0; m1 <= 4; ++m1)
      for (unsigned m2 = 0; m2 + m1 <= 8; ++m2)
        EXPECT_EQ(factorization_sumrule(m1, m2, c, s, q("1+i"), q("-2/3"), q("1/3-i"), 0).verdict,
                  Verdict::exact_pass);
  }
}

TEST(InnerProductMoments, KnownLowOrders) {
  const Vec u{exact(3), exact(4)}, v{exact(3), exact(4)};
  const Scalar p = exact(1);
  EXPECT_EQ(inner_product_moment_lhs(0, u, v, p), exact(1));
  EXPECT_EQ(inner_product_moment_lhs(1, u, v, p), exact(25));
  // E[(u+sqrt(p)N)^t(v+sqrt(p)M)]^2 = (u^t v)^2 + p(|u|^2 + |v|^2) + n p^2
  EXPECT_EQ(inner_product_moment_lhs(2, u, v, p), exact(625 + 50 + 2));
  const auto pair = polarization_pair(u, v);
  EXPECT_EQ(inner_product_moment_rhs(2, pair, 2, p), exact(677));
}

TEST(InnerProductMoments, ScaledGraczykAgreement) {
  for (const auto& vp : polarizable_pairs(3, 4))
    for (const char* p : {"-2", "1/2", "3"})
      for (unsigned total = 0; total <= 6; ++total) {
        const auto r = inner_product_moment_report(total, vp.u, vp.v, q(p), 0);
        EXPECT_EQ(r.verdict, Verdict::exact_pass);
        const Scalar half_p = q(p) / exact(2);
        EXPECT_EQ(r.lhs, Scalar::from_int(factorial(total), Mode::exact) * graczyk_lhs(total, vp.u, vp.v, half_p));
      }
}

TEST(MatrixMoments, ExactAgreement) {
  for (const auto& [a, b] : polarizable_matrices(2, 3, 3))
    for (unsigned total = 0; total <= 6; ++total)
      EXPECT_EQ(matrix_moment_report(total, a, b, 0).verdict, Verdict::exact_pass);
}

TEST(Reports, FloatVerdicts) {
  const auto pass = make_report("t", {}, Scalar::floating(1.0), Scalar::floating(1.0 + 1e-12), 1e-9);
  EXPECT_EQ(pass.verdict, Verdict::within_tolerance);
  const auto fail = make_report("t", {}, Scalar::floating(1.0), Scalar::floating(1.1), 1e-9);
  EXPECT_EQ(fail.verdict, Verdict::fail);
  const auto exact_fail = make_report("t", {}, exact(1), exact(1, 1000000), 1e-9);
  EXPECT_EQ(exact_fail.verdict, Verdict::fail);
}
