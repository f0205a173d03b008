#ifndef GHK_GRIDS_HPP
#define GHK_GRIDS_HPP

// Default verification grids and the sweeps that run them.
//
// Exact-mode vector pairs are built so that |u + v| and |u - v| are
// rational: u = (a + b)/2, v = (a - b)/2 for integer vectors a, b with
// integer Euclidean norm, or v = lambda u for rational lambda.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ghk/identities.hpp"
#include "ghk/scalar.hpp"

namespace ghk {

using Vector = std::vector<Scalar>;

struct VectorPair {
  Vector u;
  Vector v;
};

inline Vector to_mode(const Vector& v, Mode m) {
  Vector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_mode(m));
  return out;
}

inline Vector parse_vector(std::string_view text, Mode mode) {
  Vector out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(Scalar::parse(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start), mode));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Rows separated by ';', entries by ','.
inline Matrix parse_matrix(std::string_view text, Mode mode) {
  std::vector<Vector> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    rows.push_back(parse_vector(text.substr(start, semi == std::string_view::npos ? text.npos : semi - start), mode));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  std::vector<Scalar> entries;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw parse_error("matrix rows differ in length");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return Matrix(rows.size(), rows.front().size(), std::move(entries));
}

/// Integer vectors of dimension n with integer Euclidean norm, in a fixed order.
///
/// Candidates are non-decreasing non-negative tuples (at least two non-zero
/// entries when n >= 2), ordered by largest entry. The k-th accepted tuple is
/// rotated left by k places and has coordinate k mod n negated when k is odd.
inline std::vector<Vector> rational_norm_vectors(std::size_t n, std::size_t count) {
  std::vector<Vector> out;
  if (n == 0) return out;
  if (n == 1) {
    for (std::size_t k = 1; out.size() < count; ++k)
      out.push_back({Scalar::exact(Rational(static_cast<long long>(k % 2 ? k : -static_cast<long long>(k))))});
    return out;
  }
  std::vector<long long> t(n);
  for (long long bound = 1; out.size() < count; ++bound) {
    // all non-decreasing tuples with last entry == bound
    std::vector<std::vector<long long>> found;
    t.assign(n, 0);
    t[n - 1] = bound;
    auto visit = [&](auto&& self, std::size_t pos, long long hi) -> void {
      if (pos == static_cast<std::size_t>(-1)) {
        std::size_t nonzero = 0;
        long long sq = 0;
        for (long long e : t) {
          nonzero += e != 0;
          sq += e * e;
        }
        if (nonzero < 2) return;
        const auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(sq))));
        if (r * r == sq) found.push_back(t);
        return;
      }
      for (long long e = 0; e <= hi; ++e) {
        t[pos] = e;
        self(self, pos - 1, e);
      }
    };
    visit(visit, n - 2, bound);
    for (auto& f : found) {
      if (out.size() >= count) break;
      const std::size_t k = out.size();
      std::rotate(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(k % n), f.end());
      if (k % 2) f[k % n] = -f[k % n];
      Vector v;
      for (long long e : f) v.push_back(Scalar::exact(Rational(e)));
      out.push_back(std::move(v));
    }
  }
  return out;
}

/// At least `count` exact pairs with rational polarization norms.
inline std::vector<VectorPair> polarizable_pairs(std::size_t n, std::size_t count) {
  std::size_t base = 2;
  while (base * (base - 1) / 2 + 3 < count) ++base;
  const auto vs = rational_norm_vectors(n, base);
  const Scalar half = Scalar::exact(Rational(1, 2));
  std::vector<VectorPair> pairs;
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = i + 1; j < base; ++j) {
      VectorPair p;
      for (std::size_t k = 0; k < n; ++k) {
        p.u.push_back((vs[i][k] + vs[j][k]) * half);
        p.v.push_back((vs[i][k] - vs[j][k]) * half);
      }
      pairs.push_back(std::move(p));
    }
  // collinear and degenerate pairs
  const Rational lambdas[] = {Rational(-2, 3), Rational(1, 2)};
  for (std::size_t k = 0; k < 2; ++k) {
    VectorPair p{vs[k], {}};
    for (const auto& e : vs[k]) p.v.push_back(e * Scalar::exact(lambdas[k]));
    pairs.push_back(std::move(p));
  }
  pairs.push_back({vs[0], Vector(n, Scalar::exact(0))});
  return pairs;
}

/// Random rational in [-range, range] with denominator at most max_den.
inline Rational random_rational(std::mt19937_64& rng, long long range, long long max_den) {
  std::uniform_int_distribution<long long> den_dist(1, max_den);
  const long long den = den_dist(rng);
  std::uniform_int_distribution<long long> num_dist(-range * den, range * den);
  return Rational(num_dist(rng), den);
}

// ---------------------------------------------------------------------------
// Grids

struct GraczykGrid {
  std::vector<std::size_t> dims{1, 2, 3};
  unsigned max_total = 6;
  std::vector<std::string> p_values{"-2", "-1/2", "0", "1", "3/2"};
  std::size_t pairs_per_dim = 10;
  /// Replaces the generated pairs when set.
  std::vector<VectorPair> custom_pairs;
  /// Appended to the generated pairs of matching dimension.
  std::vector<VectorPair> extra_pairs{{{Scalar::exact(3), Scalar::exact(4)}, {Scalar::exact(3), Scalar::exact(4)}}};
};

struct InnerMomentGrid {
  std::vector<std::size_t> dims{1, 2, 3, 5};
  unsigned max_total = 6;
  std::vector<std::string> p_values{"-2", "-1/2", "0", "1/2", "1", "2"};
  std::size_t pairs_per_dim = 3;
  std::vector<VectorPair> custom_pairs;
};

struct RotationGrid {
  std::vector<std::size_t> dims{2, 3};
  std::vector<std::string> t_values{"1/2", "2", "1/2i", "1+i"};
  unsigned max_degree = 6;
  std::string p = "1/3";
  /// Maximum number of Givens factors per rotation (n = 2 uses all words).
  unsigned max_factors = 3;
};

struct FactorizationGrid {
  std::vector<std::string> t_values{"1/2", "2", "1/3", "3/2", "1/2i", "1+i", "2-1/3i"};
  unsigned max_total = 8;
  std::vector<std::array<std::string, 3>> points{{"1", "2", "-1/2"}, {"-3/2", "1/3", "2"}, {"1+i", "2", "1/3"}};
  std::size_t binomial_points = 5;
  std::uint64_t binomial_seed = 20080101;
};

struct MatrixGrid {
  std::vector<std::pair<std::size_t, std::size_t>> shapes{{1, 1}, {2, 2}, {2, 3}};
  unsigned max_total = 6;
  std::size_t pairs_per_shape = 3;
};

inline Params describe(const GraczykGrid& g) {
  std::string dims, ps;
  if (g.custom_pairs.empty())
    for (auto d : g.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  else
    for (auto& vp : g.custom_pairs) dims += (dims.empty() ? "" : ",") + std::to_string(vp.u.size());
  for (auto& p : g.p_values) ps += (ps.empty() ? "" : ",") + p;
  return {{"n", dims},
          {"M", "0.." + std::to_string(g.max_total)},
          {"p", ps},
          {"pairs", g.custom_pairs.empty() ? "generated:" + std::to_string(g.pairs_per_dim) + "+/n" : "custom"}};
}

inline Params describe(const InnerMomentGrid& g) {
  std::string dims, ps;
  if (g.custom_pairs.empty())
    for (auto d : g.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  else
    for (auto& vp : g.custom_pairs) dims += (dims.empty() ? "" : ",") + std::to_string(vp.u.size());
  for (auto& p : g.p_values) ps += (ps.empty() ? "" : ",") + p;
  return {{"n", dims},
          {"M", "0.." + std::to_string(g.max_total)},
          {"p", ps},
          {"p_convention", "sqrt(p)"},
          {"pairs", g.custom_pairs.empty() ? "generated:" + std::to_string(g.pairs_per_dim) + "/n" : "custom"}};
}

inline Params describe(const RotationGrid& g) {
  std::string dims, ts;
  for (auto d : g.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  for (auto& t : g.t_values) ts += (ts.empty() ? "" : ",") + t;
  return {{"n", dims},
          {"t", ts},
          {"m", "0.." + std::to_string(g.max_degree)},
          {"p", g.p},
          {"max_factors", std::to_string(g.max_factors)}};
}

inline Params describe(const FactorizationGrid& g) {
  std::string ts, pts;
  for (auto& t : g.t_values) ts += (ts.empty() ? "" : ",") + t;
  for (auto& p : g.points) pts += (pts.empty() ? "" : ";") + p[0] + "," + p[1] + "," + p[2];
  return {{"t", ts},
          {"m1+m2", "0.." + std::to_string(g.max_total)},
          {"x,y,p", pts},
          {"binomial_points", std::to_string(g.binomial_points)},
          {"binomial_seed", std::to_string(g.binomial_seed)}};
}

inline Params describe(const MatrixGrid& g) {
  std::string shapes;
  for (auto [r, c] : g.shapes) shapes += (shapes.empty() ? "" : ",") + std::to_string(r) + "x" + std::to_string(c);
  return {{"shapes", shapes},
          {"M", "0.." + std::to_string(g.max_total)},
          {"pairs", std::to_string(g.pairs_per_shape) + "/shape"}};
}

// ---------------------------------------------------------------------------
// Sweeps. Grid inputs are exact; float mode converts them before evaluating.

inline std::vector<IdentityReport> sweep_graczyk(const GraczykGrid& g, Mode mode, double tolerance) {
  std::vector<IdentityReport> out;
  auto run_pairs = [&](const std::vector<VectorPair>& pairs) {
    for (const auto& pair : pairs) {
      const Vector u = to_mode(pair.u, mode), v = to_mode(pair.v, mode);
      for (unsigned total = 0; total <= g.max_total; ++total)
        for (const auto& p : g.p_values) out.push_back(graczyk_report(total, u, v, Scalar::parse(p, mode), tolerance));
    }
  };
  if (!g.custom_pairs.empty()) {
    run_pairs(g.custom_pairs);
    return out;
  }
  for (std::size_t n : g.dims) {
    auto pairs = polarizable_pairs(n, g.pairs_per_dim);
    for (const auto& e : g.extra_pairs)
      if (e.u.size() == n) pairs.push_back(e);
    run_pairs(pairs);
  }
  return out;
}

inline std::vector<IdentityReport> sweep_inner_moments(const InnerMomentGrid& g, Mode mode, double tolerance) {
  std::vector<IdentityReport> out;
  auto run_pairs = [&](const std::vector<VectorPair>& pairs) {
    for (const auto& pair : pairs) {
      const Vector u = to_mode(pair.u, mode), v = to_mode(pair.v, mode);
      for (unsigned total = 0; total <= g.max_total; ++total)
        for (const auto& p : g.p_values)
          out.push_back(inner_product_moment_report(total, u, v, Scalar::parse(p, mode), tolerance));
    }
  };
  if (!g.custom_pairs.empty()) {
    run_pairs(g.custom_pairs);
    return out;
  }
  for (std::size_t n : g.dims) {
    auto pairs = polarizable_pairs(n, g.pairs_per_dim);
    pairs.resize(g.pairs_per_dim);
    run_pairs(pairs);
  }
  return out;
}

/// Products of complex Givens rotations drawn from the grid's t values.
/// n = 2 uses every word of up to max_factors letters in the (0,1) plane.
/// n >= 3 uses every single factor and ordered pair over all planes, plus
/// words of length 3 over planes (0,1), (1,2), (0,2) when max_factors >= 3.
inline std::vector<ComplexOrthogonal> rotation_family(std::size_t n, const std::vector<std::string>& t_values,
                                                      unsigned max_factors, Mode mode) {
  std::vector<ComplexOrthogonal> letters_all;
  std::vector<std::pair<std::size_t, std::size_t>> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) planes.emplace_back(i, j);
  for (auto [i, j] : planes)
    for (const auto& t : t_values) letters_all.push_back(complex_givens(n, i, j, Scalar::parse(t, mode)));

  std::vector<ComplexOrthogonal> out;
  std::vector<ComplexOrthogonal> frontier{ComplexOrthogonal::identity(n, mode)};
  const unsigned full_depth = n == 2 ? max_factors : std::min(max_factors, 2u);
  for (unsigned depth = 1; depth <= full_depth; ++depth) {
    std::vector<ComplexOrthogonal> next;
    for (const auto& w : frontier)
      for (const auto& l : letters_all) next.push_back(w * l);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  if (n >= 3 && max_factors >= 3) {
    const std::size_t k = t_values.size();
    const std::pair<std::size_t, std::size_t> word_planes[] = {{0, 1}, {1, 2}, {0, 2}};
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c)
          out.push_back(complex_givens(n, word_planes[0].first, word_planes[0].second, Scalar::parse(t_values[a], mode)) *
                        complex_givens(n, word_planes[1].first, word_planes[1].second, Scalar::parse(t_values[b], mode)) *
                        complex_givens(n, word_planes[2].first, word_planes[2].second, Scalar::parse(t_values[c], mode)));
  }
  return out;
}

inline Vector rotation_test_vector(std::size_t n, Mode mode) {
  static const char* entries[] = {"1", "-2", "3/2", "1/3", "-5/4", "2"};
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Scalar::parse(entries[i % 6], mode));
  return v;
}

inline std::vector<IdentityReport> sweep_rotation(const RotationGrid& g, Mode mode, double tolerance) {
  std::vector<IdentityReport> out;
  const Scalar p = Scalar::parse(g.p, mode);
  for (std::size_t n : g.dims) {
    const Vector x = rotation_test_vector(n, mode);
    for (const auto& o : rotation_family(n, g.t_values, g.max_factors, mode))
      for (unsigned m = 0; m <= g.max_degree; ++m)
        for (std::size_t row = 0; row < n; ++row) out.push_back(rotation_sumrule(m, o, row, x, p, tolerance));
  }
  return out;
}

inline std::vector<IdentityReport> sweep_factorization(const FactorizationGrid& g, Mode mode, double tolerance) {
  std::vector<IdentityReport> out;
  std::mt19937_64 rng(g.binomial_seed);
  for (const auto& t : g.t_values) {
    const auto [c, s] = cayley_pair(Scalar::parse(t, mode));
    for (unsigned total = 0; total <= g.max_total; ++total)
      for (unsigned m1 = 0; m1 <= total; ++m1)
        for (const auto& pt : g.points)
          out.push_back(factorization_sumrule(m1, total - m1, c, s, Scalar::parse(pt[0], mode),
                                              Scalar::parse(pt[1], mode), Scalar::parse(pt[2], mode), tolerance));
    for (std::size_t k = 0; k < g.binomial_points; ++k) {
      const Scalar x = Scalar::exact(random_rational(rng, 5, 7)).to_mode(mode);
      const Scalar y = Scalar::exact(random_rational(rng, 5, 7)).to_mode(mode);
      for (unsigned total = 0; total <= g.max_total; ++total)
        for (unsigned m1 = 0; m1 <= total; ++m1)
          out.push_back(factorization_binomial_report(m1, total - m1, c, s, x, y, tolerance));
    }
  }
  return out;
}

/// Exact matrix pairs with rational Frobenius polarization for an r x c shape.
inline std::vector<std::pair<Matrix, Matrix>> polarizable_matrices(std::size_t rows, std::size_t cols,
                                                                   std::size_t count) {
  std::vector<std::pair<Matrix, Matrix>> out;
  for (auto& vp : polarizable_pairs(rows * cols, count)) {
    if (out.size() == count) break;
    out.emplace_back(Matrix(rows, cols, vp.u), Matrix(rows, cols, vp.v));
  }
  return out;
}

inline std::vector<IdentityReport> sweep_matrix(const MatrixGrid& g, Mode mode, double tolerance) {
  std::vector<IdentityReport> out;
  for (auto [rows, cols] : g.shapes)
    for (const auto& [a, b] : polarizable_matrices(rows, cols, g.pairs_per_shape)) {
      const Matrix am = a.to_mode(mode), bm = b.to_mode(mode);
      for (unsigned total = 0; total <= g.max_total; ++total)
        out.push_back(matrix_moment_report(total, am, bm, tolerance));
    }
  return out;
}

} // namespace ghk

#endif
