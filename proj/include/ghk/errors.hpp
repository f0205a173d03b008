#ifndef GHK_ERRORS_HPP
#define GHK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ghk {

/// Base class of every error raised by the kernel.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An exact and a float Scalar met in one expression.
class mode_mismatch : public error {
public:
  mode_mismatch() : error("scalar mode mismatch: exact and float values mixed") {}
};

class division_by_zero : public error {
public:
  division_by_zero() : error("division by zero") {}
};

/// Operands of incompatible size or shape.
class dimension_mismatch : public error {
public:
  using error::error;
};

/// A precondition on a value was violated (negative root, t^2 = -1, ...).
class domain_error : public error {
public:
  using error::error;
};

/// An exact-mode construction needs an irrational quantity.
/// Rerunning in float mode is the caller's option.
class not_representable : public error {
public:
  using error::error;
};

/// Malformed textual input.
class parse_error : public error {
public:
  using error::error;
};

} // namespace ghk

#endif
