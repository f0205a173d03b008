#ifndef GHK_GOULD_HOPPER_HPP
#define GHK_GOULD_HOPPER_HPP

// Gould-Hopper polynomials
//
//   g_m(x, p) = sum_{k=0}^{floor(m/2)} m! / (k! (m-2k)!) p^k x^{m-2k}
//
// equivalently the Gaussian moment g_m(x, p) = E (x + sqrt(2p) N)^m with
// N standard normal. Three evaluation routes are provided and must agree
// exactly in exact mode: the direct sum, the three-term recurrence
//
//   g_0 = 1,  g_1 = x,  g_{m+1} = x g_m + 2 p m g_{m-1},
//
// and the binomial expansion of the moment with E N^{2k} = (2k)! / (2^k k!).

#include <span>
#include <vector>

#include "ghk/multiindex.hpp"
#include "ghk/scalar.hpp"

namespace ghk {

/// Parameter p of the family. May be negative or complex.
struct GHParams {
  Scalar p;
};

/// Direct summation.
inline Scalar gh_eval(unsigned m, const Scalar& x, const Scalar& p) {
  const Mode mode = x.mode();
  if (p.mode() != mode) throw mode_mismatch();
  const BigInt mf = factorial(m);
  Scalar sum = Scalar::zero(mode);
  for (unsigned k = 0; 2 * k <= m; ++k) {
    const BigInt coeff = mf / (factorial(k) * factorial(m - 2 * k));
    sum += Scalar::from_int(coeff, mode) * p.pow(k) * x.pow(m - 2 * k);
  }
  return sum;
}

/// g_0(x,p), ..., g_{max_degree}(x,p) by the recurrence.
inline std::vector<Scalar> gh_table(unsigned max_degree, const Scalar& x, const Scalar& p) {
  const Mode mode = x.mode();
  if (p.mode() != mode) throw mode_mismatch();
  std::vector<Scalar> g;
  g.reserve(max_degree + 1);
  g.push_back(Scalar::one(mode));
  if (max_degree == 0) return g;
  g.push_back(x);
  const Scalar two_p = Scalar::from_int(2, mode) * p;
  for (unsigned m = 1; m < max_degree; ++m) g.push_back(x * g[m] + two_p * Scalar::from_int(m, mode) * g[m - 1]);
  return g;
}

inline Scalar gh_eval_recurrence(unsigned m, const Scalar& x, const Scalar& p) { return gh_table(m, x, p)[m]; }

/// E (x + sigma N)^m with sigma^2 = 2p substituted; only even moments survive.
inline Scalar gh_moment_oracle(unsigned m, const Scalar& x, const Scalar& p) {
  const Mode mode = x.mode();
  if (p.mode() != mode) throw mode_mismatch();
  const Scalar sigma_sq = Scalar::from_int(2, mode) * p;
  Scalar sum = Scalar::zero(mode);
  for (unsigned k = 0; 2 * k <= m; ++k) {
    // E N^{2k} = (2k)! / (2^k k!)
    const BigInt gaussian_moment = factorial(2 * k) / (BigInt(1) << k) / factorial(k);
    sum += Scalar::from_int(binomial(m, 2 * k) * gaussian_moment, mode) * x.pow(m - 2 * k) * sigma_sq.pow(k);
  }
  return sum;
}

/// g_m(x, p) = prod_i g_{m_i}(x_i, p).
inline Scalar gh_multi_eval(const MultiIndex& m, std::span<const Scalar> x, const Scalar& p) {
  if (x.size() != m.size()) throw dimension_mismatch("gh_multi_eval: multi-index and vector differ in dimension");
  Scalar r = Scalar::one(p.mode());
  for (std::size_t i = 0; i < m.size(); ++i) r *= gh_eval_recurrence(m[i], x[i], p);
  return r;
}

/// Physicists' Hermite polynomial H_n(x) = g_n(2x, -1).
inline Scalar hermite_eval(unsigned n, const Scalar& x) {
  const Mode mode = x.mode();
  return gh_eval_recurrence(n, Scalar::from_int(2, mode) * x, Scalar::from_int(-1, mode));
}

} // namespace ghk

#endif
