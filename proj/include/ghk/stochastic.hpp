#ifndef GHK_STOCHASTIC_HPP
#define GHK_STOCHASTIC_HPP

// Seeded Monte Carlo moment matching for equalities in distribution.
//
// Random streams: each (seed, stream id) pair seeds a std::mt19937_64 with
// splitmix64(seed + (stream_id + 1) * 0x9E3779B97F4A7C15). Uniforms take the
// top 53 bits of one engine output. Normals come from the Box-Muller
// transform, both outputs of a pair used in order (cos branch first).
//
// A run of `count` samples is split over a fixed number of streams; stream k
// produces chunk k, and chunks are concatenated in stream order before any
// statistic is taken. Results therefore do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ghk/errors.hpp"
#include "ghk/identities.hpp"
#include "ghk/matrix.hpp"

namespace ghk {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(splitmix64(seed + (stream_id + 1) * 0x9E3779B97F4A7C15ull)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal.
  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
  }

  /// Chi variate with k degrees of freedom.
  double chi(unsigned k) {
    double sum = 0.0;
    for (unsigned i = 0; i < k; ++i) {
      const double z = normal();
      sum += z * z;
    }
    return std::sqrt(sum);
  }

private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// ---------------------------------------------------------------------------
// Samplers

inline std::vector<double> sample_gaussian(RngStream& stream, std::size_t count) {
  std::vector<double> out(count);
  for (auto& v : out) v = stream.normal();
  return out;
}

inline std::vector<double> sample_chi(RngStream& stream, unsigned k, std::size_t count) {
  if (k == 0) throw domain_error("chi distribution needs k >= 1 degrees of freedom");
  std::vector<double> out(count);
  for (auto& v : out) v = stream.chi(k);
  return out;
}

namespace detail {

inline std::vector<double> real_values(std::span<const Scalar> v, const char* what) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& s : v) {
    if (!s.is_real()) throw domain_error(std::string(what) + ": entries must be real");
    out.push_back(s.approx().real());
  }
  return out;
}

inline double real_value(const Scalar& s, const char* what) {
  if (!s.is_real()) throw domain_error(std::string(what) + ": value must be real");
  return s.approx().real();
}

inline void require_nonnegative(double p) {
  if (!(p >= 0.0)) throw domain_error("sampling needs a noise parameter p >= 0");
}

} // namespace detail

/// Samples of (u + sqrt(p) N)^t (v + sqrt(p) M).
inline std::vector<double> inner_product_lhs_samples(std::span<const double> u, std::span<const double> v, double p,
                                                     RngStream& stream, std::size_t count) {
  detail::require_nonnegative(p);
  if (u.size() != v.size() || u.empty()) throw dimension_mismatch("inner product sampling: vectors differ in dimension");
  const double scale = std::sqrt(p);
  std::vector<double> out(count);
  for (auto& sample : out) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double a = u[i] + scale * stream.normal();
      const double b = v[i] + scale * stream.normal();
      acc += a * b;
    }
    sample = acc;
  }
  return out;
}

/// Samples of (x + sqrt(p) N_1)(y + sqrt(p) M_1) + p Z_{n-1} N. For n = 1
/// the chi term is absent.
inline std::vector<double> inner_product_rhs_samples(double x, double y, std::size_t n, double p, RngStream& stream,
                                                     std::size_t count) {
  detail::require_nonnegative(p);
  if (n == 0) throw dimension_mismatch("inner product sampling: n must be at least 1");
  const double scale = std::sqrt(p);
  std::vector<double> out(count);
  for (auto& sample : out) {
    const double a = x + scale * stream.normal();
    const double b = y + scale * stream.normal();
    double value = a * b;
    if (n > 1) {
      const double z = stream.chi(static_cast<unsigned>(n - 1));
      value += p * z * stream.normal();
    }
    sample = value;
  }
  return out;
}

inline std::vector<double> inner_product_rhs_samples(const PolarizationPair& pair, std::size_t n, double p,
                                                     RngStream& stream, std::size_t count) {
  return inner_product_rhs_samples(detail::real_value(pair.x, "polarization pair"),
                                   detail::real_value(pair.y, "polarization pair"), n, p, stream, count);
}

/// Samples of tr((A + N)^t (B + M)) with i.i.d. standard real Gaussian entries.
inline std::vector<double> matrix_trace_lhs_samples(const Matrix& a, const Matrix& b, RngStream& stream,
                                                    std::size_t count) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_mismatch("matrix sampling: shapes differ");
  const auto u = detail::real_values(a.entries(), "matrix sampling");
  const auto v = detail::real_values(b.entries(), "matrix sampling");
  return inner_product_lhs_samples(u, v, 1.0, stream, count);
}

/// Samples of (x + N_1)(y + M_1) + Z_{rc-1} N with (x, y) the Frobenius polarization.
inline std::vector<double> matrix_trace_rhs_samples(const Matrix& a, const Matrix& b, RngStream& stream,
                                                    std::size_t count) {
  const PolarizationPair pair = matrix_polarization(a, b);
  return inner_product_rhs_samples(pair, a.rows() * a.cols(), 1.0, stream, count);
}

/// Samples of sqrt(chi_a^2 + chi_b^2) from independent chi_a, chi_b.
inline std::vector<double> chi_merge_samples(unsigned a, unsigned b, RngStream& stream, std::size_t count) {
  if (a == 0 || b == 0) throw domain_error("chi merge needs positive degrees of freedom");
  std::vector<double> out(count);
  for (auto& v : out) {
    const double ca = stream.chi(a);
    const double cb = stream.chi(b);
    v = std::sqrt(ca * ca + cb * cb);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moments

/// Empirical raw moments of orders 1..K with their standard errors.
/// se_k = sd(X^k) / sqrt(count), sd with the n-1 denominator.
struct SampleStats {
  std::size_t count = 0;
  std::vector<double> moments;
  std::vector<double> standard_errors;

  unsigned order() const { return static_cast<unsigned>(moments.size()); }
  double moment(unsigned k) const { return moments.at(k - 1); }
  double standard_error(unsigned k) const { return standard_errors.at(k - 1); }
};

inline SampleStats compute_stats(std::span<const double> samples, unsigned max_order) {
  if (samples.size() < 2) throw domain_error("moment statistics need at least two samples");
  std::vector<long double> sums(2 * max_order + 1, 0.0L);
  for (double x : samples) {
    long double power = 1.0L;
    for (unsigned k = 1; k <= 2 * max_order; ++k) {
      power *= x;
      sums[k] += power;
    }
  }
  const long double n = static_cast<long double>(samples.size());
  SampleStats s;
  s.count = samples.size();
  for (unsigned k = 1; k <= max_order; ++k) {
    const long double mean = sums[k] / n;
    const long double second = sums[2 * k] / n;
    const long double var = std::max(0.0L, (second - mean * mean) * n / (n - 1.0L));
    s.moments.push_back(static_cast<double>(mean));
    s.standard_errors.push_back(static_cast<double>(std::sqrt(var / n)));
  }
  return s;
}

struct MomentVerdict {
  unsigned order = 0;
  double difference = 0.0; // |m_k(a) - m_k(b)|
  double bound = 0.0;      // z * sqrt(se_a^2 + se_b^2)
  bool passed = false;
};

/// Pass at order k iff |m_k(a) - m_k(b)| <= z sqrt(se_k(a)^2 + se_k(b)^2).
inline std::vector<MomentVerdict> moment_match(const SampleStats& a, const SampleStats& b, unsigned max_order,
                                               double z) {
  if (a.order() < max_order || b.order() < max_order)
    throw domain_error("moment_match: statistics computed to a lower order than requested");
  std::vector<MomentVerdict> out;
  for (unsigned k = 1; k <= max_order; ++k) {
    MomentVerdict v;
    v.order = k;
    v.difference = std::abs(a.moment(k) - b.moment(k));
    v.bound = z * std::hypot(a.standard_error(k), b.standard_error(k));
    v.passed = v.difference <= v.bound;
    out.push_back(v);
  }
  return out;
}

/// Checks an empirical moment against a known value: |m_k - exact| <= z se_k.
inline MomentVerdict moment_against(const SampleStats& a, unsigned k, double exact, double z) {
  MomentVerdict v;
  v.order = k;
  v.difference = std::abs(a.moment(k) - exact);
  v.bound = z * a.standard_error(k);
  v.passed = v.difference <= v.bound;
  return v;
}

/// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

inline KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw domain_error("KS test needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double en = std::sqrt(na * nb / (na + nb));
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  // Kolmogorov series Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2)
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    q += term;
    if (std::abs(term) < 1e-12) break;
  }
  return {d, std::clamp(lambda < 1e-3 ? 1.0 : q, 0.0, 1.0)};
}

// ---------------------------------------------------------------------------
// Two-sided moment tests

/// Thread cap from GH_KERNEL_THREADS, else the hardware concurrency.
inline unsigned default_thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GH_KERNEL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

struct SamplingConfig {
  std::uint64_t seed = 1;
  std::size_t count = 1'000'000;
  unsigned max_order = 4;
  double z = 5.0;
  unsigned streams = 16;
  unsigned threads = 0; // 0: default_thread_count()
};

/// Runs `sampler(stream, chunk)` on streams first_id .. first_id + streams - 1
/// and concatenates the chunks in stream order.
template <class Sampler>
std::vector<double> collect_samples(const SamplingConfig& cfg, std::uint64_t first_id, Sampler&& sampler) {
  const unsigned streams = std::max(1u, cfg.streams);
  std::vector<std::vector<double>> chunks(streams);
  auto run = [&](unsigned k) {
    const std::size_t size = cfg.count / streams + (k < cfg.count % streams ? 1 : 0);
    RngStream stream(cfg.seed, first_id + k);
    chunks[k] = sampler(stream, size);
  };
  const unsigned threads = std::min(streams, cfg.threads ? cfg.threads : default_thread_count());
  if (threads <= 1) {
    for (unsigned k = 0; k < streams; ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (unsigned k = t; k < streams; k += threads) run(k);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<double> all;
  all.reserve(cfg.count);
  for (auto& c : chunks) all.insert(all.end(), c.begin(), c.end());
  return all;
}

struct MomentTest {
  SampleStats lhs;
  SampleStats rhs;
  std::vector<MomentVerdict> verdicts;
  std::optional<KsResult> ks;

  bool passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const MomentVerdict& v) { return v.passed; });
  }
};

/// Left side on streams [0, S), right side on [S, 2S).
template <class LhsSampler, class RhsSampler>
MomentTest run_moment_test(const SamplingConfig& cfg, LhsSampler&& lhs, RhsSampler&& rhs, bool with_ks = false) {
  const auto a = collect_samples(cfg, 0, lhs);
  const auto b = collect_samples(cfg, cfg.streams, rhs);
  MomentTest t;
  t.lhs = compute_stats(a, cfg.max_order);
  t.rhs = compute_stats(b, cfg.max_order);
  t.verdicts = moment_match(t.lhs, t.rhs, cfg.max_order, cfg.z);
  if (with_ks) t.ks = ks_two_sample(a, b);
  return t;
}

inline MomentTest inner_product_test(std::span<const double> u, std::span<const double> v, double p,
                                     const SamplingConfig& cfg, bool with_ks = false) {
  detail::require_nonnegative(p);
  std::vector<Scalar> us, vs;
  for (double d : u) us.push_back(Scalar::floating(d));
  for (double d : v) vs.push_back(Scalar::floating(d));
  const PolarizationPair pair = polarization_pair(us, vs);
  const std::vector<double> uc(u.begin(), u.end()), vc(v.begin(), v.end());
  return run_moment_test(
      cfg, [&](RngStream& s, std::size_t n) { return inner_product_lhs_samples(uc, vc, p, s, n); },
      [&](RngStream& s, std::size_t n) { return inner_product_rhs_samples(pair, uc.size(), p, s, n); }, with_ks);
}

inline MomentTest matrix_trace_test(const Matrix& a, const Matrix& b, const SamplingConfig& cfg, bool with_ks = false) {
  const Matrix af = a.to_mode(Mode::floating), bf = b.to_mode(Mode::floating);
  return run_moment_test(
      cfg, [&](RngStream& s, std::size_t n) { return matrix_trace_lhs_samples(af, bf, s, n); },
      [&](RngStream& s, std::size_t n) { return matrix_trace_rhs_samples(af, bf, s, n); }, with_ks);
}

inline MomentTest chi_merge_test(unsigned a, unsigned b, const SamplingConfig& cfg, bool with_ks = false) {
  return run_moment_test(
      cfg, [&](RngStream& s, std::size_t n) { return chi_merge_samples(a, b, s, n); },
      [&](RngStream& s, std::size_t n) { return sample_chi(s, a + b, n); }, with_ks);
}

} // namespace ghk

#endif
