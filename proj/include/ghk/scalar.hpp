#ifndef GHK_SCALAR_HPP
#define GHK_SCALAR_HPP

// Two-mode complex scalar: exact Gaussian rationals or complex doubles.
//
// Every quantity entering the Gould-Hopper identities (arguments, the
// parameter p, rotation entries) is a Scalar. Arithmetic never promotes
// between modes; combining an exact and a float value throws mode_mismatch.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "ghk/errors.hpp"

namespace ghk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Mode { exact, floating };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  throw parse_error("unknown mode '" + std::string(s) + "' (expected exact or float)");
}

/// Complex number with arbitrary-precision rational parts.
struct GaussianRational {
  Rational re;
  Rational im;

  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

namespace detail {

inline std::string rational_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::string double_string(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

// Joins real and imaginary renderings as "re", "imi" or "re+imi" / "re-imi".
inline std::string join_complex(std::string re, std::string im, bool re_zero, bool im_zero) {
  if (im_zero) return re;
  if (re_zero) return im + "i";
  if (im.front() == '-') return re + im + "i";
  return re + "+" + im + "i";
}

inline BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

// Unsigned numeral: digits[.digits][e[+-]digits][/digits]. Advances pos.
inline Rational parse_unsigned_numeral(std::string_view s, std::size_t& pos) {
  const std::size_t start = pos;
  std::string digits;
  long long exponent = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos++];
      --exponent;
    }
  }
  if (digits.empty()) throw parse_error("expected a number at '" + std::string(s.substr(start)) + "'");
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
    std::string ed;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ed += s[pos++];
    if (ed.empty() || ed.size() > 6) throw parse_error("malformed exponent in '" + std::string(s) + "'");
    exponent += neg ? -std::stoll(ed) : std::stoll(ed);
  }
  // cpp_int reads a leading 0 as an octal prefix
  const auto nz = digits.find_first_not_of('0');
  Rational value{nz == std::string::npos ? BigInt(0) : BigInt(digits.substr(nz))};
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    std::string den;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) den += s[pos++];
    if (den.empty()) throw parse_error("missing denominator in '" + std::string(s) + "'");
    const auto dz = den.find_first_not_of('0');
    const BigInt d = dz == std::string::npos ? BigInt(0) : BigInt(den.substr(dz));
    if (d == 0) throw parse_error("zero denominator in '" + std::string(s) + "'");
    value /= Rational(d);
  }
  return value;
}

inline GaussianRational parse_gaussian(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  const std::string_view s = text.substr(b, e - b);
  if (s.empty()) throw parse_error("empty numeral");

  std::size_t pos = 0;
  auto sign = [&]() -> int {
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) return s[pos++] == '-' ? -1 : 1;
    return 0;
  };
  auto at_i_end = [&] { return pos + 1 == s.size() && s[pos] == 'i'; };

  const int s1 = sign();
  if (at_i_end()) return {0, s1 < 0 ? -1 : 1};
  Rational first = parse_unsigned_numeral(s, pos);
  if (s1 < 0) first = -first;
  if (pos == s.size()) return {first, 0};
  if (at_i_end()) return {0, first};
  const int s2 = sign();
  if (s2 == 0) throw parse_error("malformed numeral '" + std::string(s) + "'");
  if (at_i_end()) return {first, s2};
  Rational second = parse_unsigned_numeral(s, pos);
  if (!at_i_end()) throw parse_error("malformed numeral '" + std::string(s) + "'");
  return {first, s2 < 0 ? -second : second};
}

} // namespace detail

class Scalar {
public:
  using Float = std::complex<double>;

  /// Exact zero.
  Scalar() = default;

  static Scalar exact(Rational re, Rational im = 0) { return Scalar(GaussianRational{std::move(re), std::move(im)}); }
  static Scalar exact(GaussianRational z) { return Scalar(std::move(z)); }
  static Scalar floating(Float z) { return Scalar(z); }
  static Scalar floating(double re, double im = 0.0) { return Scalar(Float(re, im)); }

  static Scalar from_rational(const Rational& r, Mode m) {
    if (m == Mode::exact) return exact(r);
    return floating(r.convert_to<double>());
  }
  static Scalar from_int(const BigInt& v, Mode m) { return from_rational(Rational(v), m); }
  static Scalar from_int(long long v, Mode m) {
    if (m == Mode::exact) return exact(Rational(v));
    return floating(static_cast<double>(v));
  }
  static Scalar zero(Mode m) { return from_int(0, m); }
  static Scalar one(Mode m) { return from_int(1, m); }

  /// Parses "a", "a/b", "1.5e-3", "a/b+c/di", "c/di", "1+i", "-i".
  static Scalar parse(std::string_view text, Mode m) {
    GaussianRational z = detail::parse_gaussian(text);
    if (m == Mode::exact) return exact(std::move(z));
    return floating(z.re.convert_to<double>(), z.im.convert_to<double>());
  }

  Mode mode() const { return v_.index() == 0 ? Mode::exact : Mode::floating; }
  bool is_exact() const { return mode() == Mode::exact; }

  const GaussianRational& exact_value() const {
    if (!is_exact()) throw mode_mismatch();
    return std::get<GaussianRational>(v_);
  }
  Float float_value() const {
    if (is_exact()) throw mode_mismatch();
    return std::get<Float>(v_);
  }

  /// Approximation in complex doubles regardless of mode.
  Float approx() const {
    if (auto* z = std::get_if<GaussianRational>(&v_)) return {z->re.convert_to<double>(), z->im.convert_to<double>()};
    return std::get<Float>(v_);
  }

  /// Explicit mode change. Doubles are dyadic rationals, so float -> exact is lossless.
  Scalar to_mode(Mode m) const {
    if (m == mode()) return *this;
    if (m == Mode::floating) return floating(approx());
    const Float z = std::get<Float>(v_);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw domain_error("non-finite value has no exact form");
    return exact(Rational(z.real()), Rational(z.imag()));
  }

  bool is_zero() const {
    if (auto* z = std::get_if<GaussianRational>(&v_)) return z->re == 0 && z->im == 0;
    return std::get<Float>(v_) == Float(0.0, 0.0);
  }
  bool is_real() const {
    if (auto* z = std::get_if<GaussianRational>(&v_)) return z->im == 0;
    return std::get<Float>(v_).imag() == 0.0;
  }
  double magnitude() const { return std::abs(approx()); }

  Scalar real_part() const {
    if (auto* z = std::get_if<GaussianRational>(&v_)) return exact(z->re);
    return floating(std::get<Float>(v_).real());
  }

  std::string to_string() const {
    if (auto* z = std::get_if<GaussianRational>(&v_))
      return detail::join_complex(detail::rational_string(z->re), detail::rational_string(z->im), z->re == 0, z->im == 0);
    const Float z = std::get<Float>(v_);
    return detail::join_complex(detail::double_string(z.real()), detail::double_string(z.imag()), z.real() == 0.0,
                                z.imag() == 0.0);
  }

  Scalar pow(unsigned k) const {
    Scalar result = one(mode());
    Scalar base = *this;
    while (k) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return result;
  }

  Scalar operator-() const {
    if (auto* z = std::get_if<GaussianRational>(&v_)) return exact(-z->re, -z->im);
    return floating(-std::get<Float>(v_));
  }

  Scalar& operator+=(const Scalar& o) {
    combine(o, [](GaussianRational& a, const GaussianRational& b) { a.re += b.re; a.im += b.im; },
            [](Float& a, Float b) { a += b; });
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    combine(o, [](GaussianRational& a, const GaussianRational& b) { a.re -= b.re; a.im -= b.im; },
            [](Float& a, Float b) { a -= b; });
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    combine(o,
            [](GaussianRational& a, const GaussianRational& b) {
              if (a.im == 0 && b.im == 0) {
                a.re *= b.re;
                return;
              }
              Rational re = a.re * b.re - a.im * b.im;
              a.im = a.re * b.im + a.im * b.re;
              a.re = std::move(re);
            },
            [](Float& a, Float b) { a *= b; });
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) {
      if (o.mode() != mode()) throw mode_mismatch();
      throw division_by_zero();
    }
    combine(o,
            [](GaussianRational& a, const GaussianRational& b) {
              if (b.im == 0) {
                a.re /= b.re;
                a.im /= b.re;
                return;
              }
              const Rational den = b.re * b.re + b.im * b.im;
              Rational re = (a.re * b.re + a.im * b.im) / den;
              a.im = (a.im * b.re - a.re * b.im) / den;
              a.re = std::move(re);
            },
            [](Float& a, Float b) { a /= b; });
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Value equality; comparing across modes throws.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) throw mode_mismatch();
    return a.v_ == b.v_;
  }

private:
  explicit Scalar(GaussianRational z) : v_(std::move(z)) {}
  explicit Scalar(Float z) : v_(z) {}

  template <class ExactOp, class FloatOp>
  void combine(const Scalar& o, ExactOp exact_op, FloatOp float_op) {
    if (o.mode() != mode()) throw mode_mismatch();
    if (auto* z = std::get_if<GaussianRational>(&v_))
      exact_op(*z, std::get<GaussianRational>(o.v_));
    else
      float_op(std::get<Float>(v_), std::get<Float>(o.v_));
  }

  std::variant<GaussianRational, Float> v_{GaussianRational{}};
};

/// Non-negative rational square root, when one exists.
///
/// Returns nullopt for non-squares such as 2. Throws domain_error for
/// negative or non-real input and mode_mismatch for float input.
inline std::optional<Scalar> exact_sqrt(const Scalar& a) {
  const GaussianRational& z = a.exact_value();
  if (z.im != 0) throw domain_error("exact_sqrt of a non-real value");
  if (z.re < 0) throw domain_error("exact_sqrt of a negative value");
  const BigInt num = boost::multiprecision::numerator(z.re);
  const BigInt den = boost::multiprecision::denominator(z.re);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Scalar::exact(Rational(rn, rd));
}

/// Non-negative square root of a non-negative real Scalar, in either mode.
/// Exact mode throws not_representable when the root is irrational.
inline Scalar real_sqrt(const Scalar& a) {
  if (a.is_exact()) {
    if (auto r = exact_sqrt(a)) return *r;
    throw not_representable("square root of " + a.to_string() + " is not rational; rerun in float mode");
  }
  const auto z = a.float_value();
  if (z.imag() != 0.0) throw domain_error("square root of a non-real value");
  if (z.real() < 0.0) throw domain_error("square root of a negative value");
  return Scalar::floating(std::sqrt(z.real()));
}

} // namespace ghk

#endif
