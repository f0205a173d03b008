#ifndef GHK_IDENTITIES_HPP
#define GHK_IDENTITIES_HPP

// Both sides of the Gould-Hopper sum rules, evaluated independently, plus
// the polarization and complex-rotation constructions they rely on.
//
// Every check produces an IdentityReport. In exact mode the verdict is
// exact-pass only for a residual of exactly zero; in float mode the
// residual is compared against a relative tolerance.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ghk/errors.hpp"
#include "ghk/gould_hopper.hpp"
#include "ghk/matrix.hpp"
#include "ghk/multiindex.hpp"
#include "ghk/scalar.hpp"

namespace ghk {

/// Tolerance used for structural float checks (orthogonality, c^2 + s^2 = 1).
inline constexpr double kStructuralTolerance = 1e-12;

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { exact_pass, within_tolerance, fail };

inline const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::exact_pass: return "exact-pass";
  case Verdict::within_tolerance: return "within-tolerance";
  case Verdict::fail: return "fail";
  }
  return "fail";
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "exact-pass") return Verdict::exact_pass;
  if (s == "within-tolerance") return Verdict::within_tolerance;
  if (s == "fail") return Verdict::fail;
  throw parse_error("unknown verdict '" + std::string(s) + "'");
}

/// Ordered name/value pairs describing one grid point.
using Params = std::vector<std::pair<std::string, std::string>>;

struct IdentityReport {
  std::string identity;
  Params params;
  Scalar lhs;
  Scalar rhs;
  Scalar residual;
  Mode mode = Mode::exact;
  Verdict verdict = Verdict::fail;

  bool passed() const { return verdict != Verdict::fail; }

  /// |lhs - rhs| / max(1, |lhs|, |rhs|).
  double relative_residual() const {
    return residual.magnitude() / std::max({1.0, lhs.magnitude(), rhs.magnitude()});
  }
};

/// Builds a report from both sides. `tolerance` is the relative bound used
/// in float mode and ignored in exact mode.
inline IdentityReport make_report(std::string identity, Params params, Scalar lhs, Scalar rhs, double tolerance) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.mode = lhs.mode();
  r.residual = lhs - rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  if (r.mode == Mode::exact)
    r.verdict = r.residual.is_zero() ? Verdict::exact_pass : Verdict::fail;
  else
    r.verdict = r.relative_residual() <= tolerance ? Verdict::within_tolerance : Verdict::fail;
  return r;
}

inline std::string vector_string(std::span<const Scalar> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += v[i].to_string();
  }
  return s;
}

inline std::string matrix_string(const Matrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ',';
      s += m(i, j).to_string();
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Polarization

/// The scalars x = (|u+v| + |u-v|)/2 and y = (|u+v| - |u-v|)/2.
/// x >= |y|, x^2 + y^2 = |u|^2 + |v|^2 and x y = u^t v.
struct PolarizationPair {
  Scalar x;
  Scalar y;
};

namespace detail {

inline void require_real(std::span<const Scalar> v, const char* what) {
  for (const auto& s : v)
    if (!s.is_real()) throw domain_error(std::string(what) + ": entries must be real");
}

inline Scalar squared_norm(std::span<const Scalar> v) {
  Scalar r = Scalar::zero(v.front().mode());
  for (const auto& s : v) r += s * s;
  return r;
}

} // namespace detail

/// Throws not_representable in exact mode when |u+v| or |u-v| is irrational.
inline PolarizationPair polarization_pair(std::span<const Scalar> u, std::span<const Scalar> v) {
  if (u.size() != v.size() || u.empty()) throw dimension_mismatch("polarization: vectors differ in dimension");
  detail::require_real(u, "polarization");
  detail::require_real(v, "polarization");
  std::vector<Scalar> sum, diff;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sum.push_back(u[i] + v[i]);
    diff.push_back(u[i] - v[i]);
  }
  const Scalar a = real_sqrt(detail::squared_norm(sum));
  const Scalar b = real_sqrt(detail::squared_norm(diff));
  const Scalar two = Scalar::from_int(2, a.mode());
  return {(a + b) / two, (a - b) / two};
}

/// Frobenius-norm polarization of two equally shaped real matrices:
/// x = (||A+B||_F + ||A-B||_F)/2, y = (||A+B||_F - ||A-B||_F)/2.
inline PolarizationPair matrix_polarization(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_mismatch("matrix polarization: shapes differ");
  return polarization_pair(a.entries(), b.entries());
}

// ---------------------------------------------------------------------------
// Complex orthogonal matrices

/// True iff O O^t = O^t O = I (exactly, or entrywise within 1e-12 in float mode).
inline bool orthogonality_check(const Matrix& o) {
  if (!o.square()) return false;
  const Matrix t = o.transpose();
  const Matrix id = Matrix::identity(o.rows(), o.mode());
  const Matrix left = o * t;
  const Matrix right = t * o;
  if (o.mode() == Mode::exact) return left == id && right == id;
  for (std::size_t i = 0; i < o.rows(); ++i)
    for (std::size_t j = 0; j < o.cols(); ++j)
      if ((left(i, j) - id(i, j)).magnitude() > kStructuralTolerance ||
          (right(i, j) - id(i, j)).magnitude() > kStructuralTolerance)
        return false;
  return true;
}

/// Square matrix with O O^t = O^t O = I under the transpose (bilinear) form.
class ComplexOrthogonal {
public:
  /// Validates; throws domain_error when `m` is not complex orthogonal.
  static ComplexOrthogonal from_matrix(Matrix m) {
    if (!orthogonality_check(m)) throw domain_error("matrix is not complex orthogonal");
    return ComplexOrthogonal(std::move(m));
  }
  static ComplexOrthogonal identity(std::size_t n, Mode mode) { return ComplexOrthogonal(Matrix::identity(n, mode)); }

  std::size_t size() const { return m_.rows(); }
  Mode mode() const { return m_.mode(); }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

  friend ComplexOrthogonal operator*(const ComplexOrthogonal& a, const ComplexOrthogonal& b) {
    return ComplexOrthogonal(a.m_ * b.m_);
  }

private:
  friend ComplexOrthogonal complex_givens(std::size_t, std::size_t, std::size_t, const Scalar&);
  explicit ComplexOrthogonal(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Cayley pair c = (1 - t^2)/(1 + t^2), s = 2t/(1 + t^2); c^2 + s^2 = 1.
inline std::pair<Scalar, Scalar> cayley_pair(const Scalar& t) {
  const Mode mode = t.mode();
  const Scalar one = Scalar::one(mode);
  const Scalar t2 = t * t;
  const Scalar den = one + t2;
  if (den.is_zero()) throw domain_error("Cayley parameter with t^2 = -1");
  return {(one - t2) / den, Scalar::from_int(2, mode) * t / den};
}

/// Identity with the (i, j) plane replaced by [[c, -s], [s, c]] from cayley_pair(t).
inline ComplexOrthogonal complex_givens(std::size_t n, std::size_t i, std::size_t j, const Scalar& t) {
  if (i == j || i >= n || j >= n) throw domain_error("complex_givens: need distinct plane indices below n");
  const auto [c, s] = cayley_pair(t);
  Matrix m = Matrix::identity(n, t.mode());
  m(i, i) = c;
  m(i, j) = -s;
  m(j, i) = s;
  m(j, j) = c;
  return ComplexOrthogonal(std::move(m));
}

// ---------------------------------------------------------------------------
// Multi-index inner-product rule

namespace detail {

// tables[i][k] = g_k(v_i, p) for k <= degree.
inline std::vector<std::vector<Scalar>> coordinate_tables(std::span<const Scalar> v, unsigned degree, const Scalar& p) {
  std::vector<std::vector<Scalar>> t;
  t.reserve(v.size());
  for (const auto& x : v) t.push_back(gh_table(degree, x, p));
  return t;
}

inline Scalar reciprocal(const BigInt& n, Mode mode) { return Scalar::from_rational(Rational(BigInt(1), n), mode); }

} // namespace detail

/// sum_{|m| = M} g_m(u, p) g_m(v, p) / m!
inline Scalar graczyk_lhs(unsigned total, std::span<const Scalar> u, std::span<const Scalar> v, const Scalar& p) {
  if (u.size() != v.size() || u.empty()) throw dimension_mismatch("graczyk_lhs: vectors differ in dimension");
  const Mode mode = p.mode();
  const auto gu = detail::coordinate_tables(u, total, p);
  const auto gv = detail::coordinate_tables(v, total, p);
  Scalar sum = Scalar::zero(mode);
  for (const MultiIndex& m : compositions(total, u.size())) {
    Scalar term = detail::reciprocal(m.factorial(), mode);
    for (std::size_t i = 0; i < m.size(); ++i) term *= gu[i][m[i]] * gv[i][m[i]];
    sum += term;
  }
  return sum;
}

/// sum_j (2p)^{2j} / (j! (M-2j)!) ((n-1)/2)_j g_{M-2j}(x, p) g_{M-2j}(y, p)
inline Scalar graczyk_rhs(unsigned total, const PolarizationPair& pair, std::size_t n, const Scalar& p) {
  if (n == 0) throw dimension_mismatch("graczyk_rhs: n must be at least 1");
  const Mode mode = p.mode();
  const auto gx = gh_table(total, pair.x, p);
  const auto gy = gh_table(total, pair.y, p);
  const Scalar half_n = Scalar::from_rational(Rational(static_cast<long long>(n) - 1, 2), mode);
  const Scalar two_p = Scalar::from_int(2, mode) * p;
  Scalar sum = Scalar::zero(mode);
  for (unsigned j = 0; 2 * j <= total; ++j) {
    const unsigned d = total - 2 * j;
    sum += two_p.pow(2 * j) * detail::reciprocal(factorial(j) * factorial(d), mode) * pochhammer(half_n, j) * gx[d] *
           gy[d];
  }
  return sum;
}

inline IdentityReport graczyk_report(unsigned total, std::span<const Scalar> u, std::span<const Scalar> v,
                                     const Scalar& p, double tolerance) {
  const PolarizationPair pair = polarization_pair(u, v);
  Params params{{"n", std::to_string(u.size())}, {"M", std::to_string(total)}, {"p", p.to_string()},
                {"xv", vector_string(u)},        {"yv", vector_string(v)},     {"x", pair.x.to_string()},
                {"y", pair.y.to_string()}};
  return make_report("graczyk", std::move(params), graczyk_lhs(total, u, v, p), graczyk_rhs(total, pair, u.size(), p),
                     tolerance);
}

// ---------------------------------------------------------------------------
// Exact moments of the inner product of shifted Gaussian vectors
//
// With N, M independent standard Gaussian vectors and noise scale sqrt(p):
//   lhs = (u + sqrt(p) N)^t (v + sqrt(p) M)
//   rhs = (x + sqrt(p) N_1)(y + sqrt(p) M_1) + p Z_{n-1} N,   Z ~ chi_{n-1}.
// Since E(a + sqrt(p) G)^k = g_k(a, p/2), both moment sequences are
// polynomials in p and are evaluated here for any Scalar p.

/// E[lhs^M] = M! sum_{|m| = M} g_m(u, p/2) g_m(v, p/2) / m!
inline Scalar inner_product_moment_lhs(unsigned total, std::span<const Scalar> u, std::span<const Scalar> v,
                                       const Scalar& p) {
  const Mode mode = p.mode();
  const Scalar half_p = p / Scalar::from_int(2, mode);
  return Scalar::from_int(factorial(total), mode) * graczyk_lhs(total, u, v, half_p);
}

/// E[rhs^M] = sum_j C(M,2j) E N^{2j} E Z_{n-1}^{2j} p^{2j} g_{M-2j}(x, p/2) g_{M-2j}(y, p/2)
/// with E N^{2j} = (2j)!/(2^j j!) and E Z_{n-1}^{2j} = 2^j ((n-1)/2)_j.
inline Scalar inner_product_moment_rhs(unsigned total, const PolarizationPair& pair, std::size_t n, const Scalar& p) {
  if (n == 0) throw dimension_mismatch("inner_product_moment_rhs: n must be at least 1");
  const Mode mode = p.mode();
  const Scalar half_p = p / Scalar::from_int(2, mode);
  const auto gx = gh_table(total, pair.x, half_p);
  const auto gy = gh_table(total, pair.y, half_p);
  const Scalar half_n = Scalar::from_rational(Rational(static_cast<long long>(n) - 1, 2), mode);
  Scalar sum = Scalar::zero(mode);
  for (unsigned j = 0; 2 * j <= total; ++j) {
    const unsigned d = total - 2 * j;
    const BigInt gaussian = factorial(2 * j) / (BigInt(1) << j) / factorial(j);
    const BigInt chi_scale = BigInt(1) << j;
    sum += Scalar::from_int(binomial(total, 2 * j) * gaussian * chi_scale, mode) * pochhammer(half_n, j) *
           p.pow(2 * j) * gx[d] * gy[d];
  }
  return sum;
}

inline IdentityReport inner_product_moment_report(unsigned total, std::span<const Scalar> u, std::span<const Scalar> v,
                                                  const Scalar& p, double tolerance) {
  const PolarizationPair pair = polarization_pair(u, v);
  Params params{{"n", std::to_string(u.size())}, {"M", std::to_string(total)}, {"p", p.to_string()},
                {"p_convention", "sqrt(p)"},     {"xv", vector_string(u)},     {"yv", vector_string(v)},
                {"x", pair.x.to_string()},       {"y", pair.y.to_string()}};
  return make_report("inner-product-moments", std::move(params), inner_product_moment_lhs(total, u, v, p),
                     inner_product_moment_rhs(total, pair, u.size(), p), tolerance);
}

/// Exact M-th moments of tr((A + N)^t (B + M)) against
/// (x + N_1)(y + M_1) + Z_{rc-1} N with (x, y) the Frobenius polarization.
inline IdentityReport matrix_moment_report(unsigned total, const Matrix& a, const Matrix& b, double tolerance) {
  const PolarizationPair pair = matrix_polarization(a, b);
  const Scalar one = Scalar::one(a.mode());
  Params params{{"shape", std::to_string(a.rows()) + "x" + std::to_string(a.cols())},
                {"M", std::to_string(total)},
                {"xm", matrix_string(a)},
                {"ym", matrix_string(b)},
                {"x", pair.x.to_string()},
                {"y", pair.y.to_string()}};
  return make_report("matrix", std::move(params), inner_product_moment_lhs(total, a.entries(), b.entries(), one),
                     inner_product_moment_rhs(total, pair, a.rows() * a.cols(), one), tolerance);
}

// ---------------------------------------------------------------------------
// Rotation sum rule
//
//   g_m((O x)_i, p) = sum_{|k| = m} multinomial(m; k) prod_j O_ij^{k_j} g_{k_j}(x_j, p)

inline IdentityReport rotation_sumrule(unsigned m, const ComplexOrthogonal& o, std::size_t row,
                                       std::span<const Scalar> x, const Scalar& p, double tolerance) {
  const std::size_t n = o.size();
  if (row >= n) throw domain_error("rotation_sumrule: row index out of range");
  if (x.size() != n) throw dimension_mismatch("rotation_sumrule: vector and rotation differ in dimension");
  const Mode mode = p.mode();

  const std::vector<Scalar> ox = o.matrix() * x;
  Scalar lhs = gh_eval_recurrence(m, ox[row], p);

  const auto gx = detail::coordinate_tables(x, m, p);
  std::vector<std::vector<Scalar>> powers(n);
  for (std::size_t j = 0; j < n; ++j) {
    powers[j].push_back(Scalar::one(mode));
    for (unsigned k = 1; k <= m; ++k) powers[j].push_back(powers[j].back() * o(row, j));
  }
  Scalar rhs = Scalar::zero(mode);
  for (const MultiIndex& k : compositions(m, n)) {
    Scalar term = Scalar::from_int(multinomial(m, k), mode);
    for (std::size_t j = 0; j < n; ++j) term *= powers[j][k[j]] * gx[j][k[j]];
    rhs += term;
  }

  Params params{{"n", std::to_string(n)},   {"m", std::to_string(m)},    {"row", std::to_string(row)},
                {"p", p.to_string()},       {"xv", vector_string(x)},    {"O", matrix_string(o.matrix())}};
  return make_report("rotation", std::move(params), std::move(lhs), std::move(rhs), tolerance);
}

/// (O u)^t (O v) against u^t v.
inline IdentityReport bilinear_invariance_report(const ComplexOrthogonal& o, std::span<const Scalar> u,
                                                 std::span<const Scalar> v, double tolerance) {
  const auto ou = o.matrix() * u;
  const auto ov = o.matrix() * v;
  Params params{{"u", vector_string(u)}, {"v", vector_string(v)}, {"O", matrix_string(o.matrix())}};
  return make_report("bilinear-invariance", std::move(params), bilinear(ou, ov), bilinear(u, v), tolerance);
}

// ---------------------------------------------------------------------------
// Factorization rule
//
//   g_{m1}(c x - s y, p) g_{m2}(s x + c y, p)
//     = sum_{r=0}^{m1+m2} C_{m1,m2,r}(c, s) g_r(x, p) g_{m1+m2-r}(y, p)

/// C_{m1,m2,r}(c,s) = sum_l C(m1, r-l) C(m2, l) (-1)^{m1-r+l} c^{m2+r-2l} s^{m1-r+2l}.
inline Scalar coeff_C(unsigned m1, unsigned m2, unsigned r, const Scalar& c, const Scalar& s) {
  if (r > m1 + m2) throw domain_error("coeff_C: r exceeds m1 + m2");
  const Mode mode = c.mode();
  if (s.mode() != mode) throw mode_mismatch();
  Scalar sum = Scalar::zero(mode);
  for (unsigned l = 0; l <= std::min(m2, r); ++l) {
    if (r - l > m1) continue; // binomial(m1, r-l) vanishes
    const unsigned sign_exp = m1 - (r - l);
    BigInt coeff = binomial(m1, r - l) * binomial(m2, l);
    if (sign_exp % 2) coeff = -coeff;
    sum += Scalar::from_int(coeff, mode) * c.pow(m2 + r - 2 * l) * s.pow(m1 - r + 2 * l);
  }
  return sum;
}

namespace detail {

inline void require_unit_circle(const Scalar& c, const Scalar& s) {
  const Scalar defect = c * c + s * s - Scalar::one(c.mode());
  const bool ok = c.is_exact() ? defect.is_zero() : defect.magnitude() <= kStructuralTolerance;
  if (!ok) throw domain_error("factorization rule requires c^2 + s^2 = 1");
}

} // namespace detail

inline IdentityReport factorization_sumrule(unsigned m1, unsigned m2, const Scalar& c, const Scalar& s,
                                            const Scalar& x, const Scalar& y, const Scalar& p, double tolerance) {
  detail::require_unit_circle(c, s);
  const unsigned total = m1 + m2;
  Scalar lhs = gh_eval_recurrence(m1, c * x - s * y, p) * gh_eval_recurrence(m2, s * x + c * y, p);
  const auto gx = gh_table(total, x, p);
  const auto gy = gh_table(total, y, p);
  Scalar rhs = Scalar::zero(p.mode());
  for (unsigned r = 0; r <= total; ++r) rhs += coeff_C(m1, m2, r, c, s) * gx[r] * gy[total - r];
  Params params{{"m1", std::to_string(m1)}, {"m2", std::to_string(m2)}, {"c", c.to_string()}, {"s", s.to_string()},
                {"x", x.to_string()},       {"y", y.to_string()},       {"p", p.to_string()}};
  return make_report("factorization", std::move(params), std::move(lhs), std::move(rhs), tolerance);
}

/// p = 0 specialization: (c x - s y)^{m1} (s x + c y)^{m2} = sum_r C_{m1,m2,r} x^r y^{m1+m2-r}.
inline IdentityReport factorization_binomial_report(unsigned m1, unsigned m2, const Scalar& c, const Scalar& s,
                                                    const Scalar& x, const Scalar& y, double tolerance) {
  const unsigned total = m1 + m2;
  Scalar lhs = (c * x - s * y).pow(m1) * (s * x + c * y).pow(m2);
  Scalar rhs = Scalar::zero(c.mode());
  for (unsigned r = 0; r <= total; ++r) rhs += coeff_C(m1, m2, r, c, s) * x.pow(r) * y.pow(total - r);
  Params params{{"m1", std::to_string(m1)}, {"m2", std::to_string(m2)}, {"c", c.to_string()},
                {"s", s.to_string()},       {"x", x.to_string()},       {"y", y.to_string()}};
  return make_report("factorization-binomial", std::move(params), std::move(lhs), std::move(rhs), tolerance);
}

} // namespace ghk

#endif
