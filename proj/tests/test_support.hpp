#ifndef GHK_TESTS_TEST_SUPPORT_HPP
#define GHK_TESTS_TEST_SUPPORT_HPP

#include <random>

#include "ghk/scalar.hpp"

namespace ghk::testing {

inline Rational random_rational(std::mt19937_64& rng, long long range = 10, long long max_den = 12) {
  std::uniform_int_distribution<long long> den(1, max_den);
  const long long d = den(rng);
  std::uniform_int_distribution<long long> num(-range * d, range * d);
  return Rational(num(rng), d);
}

inline Scalar random_exact(std::mt19937_64& rng, bool complex = false, long long range = 10) {
  return Scalar::exact(random_rational(rng, range), complex ? random_rational(rng, range) : Rational(0));
}

inline Scalar exact(long long num, long long den = 1) { return Scalar::exact(Rational(num, den)); }

inline Scalar q(const char* text) { return Scalar::parse(text, Mode::exact); }

} // namespace ghk::testing

#endif
