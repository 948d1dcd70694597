// Exact integer and rational arithmetic shared by every module.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace scltopo {

using Integer = mpz_class;
using Rational = mpq_class;

enum class ErrorKind {
  Parse,
  InvalidComplex,
  UnknownCell,
  NotSurface,
  NotSubcomplex,
  Precondition,
  InvalidSurface,
  MoveNotApplicable,
  InvalidChain,
  Internal,
};

std::string to_string(ErrorKind kind);

/// Every recoverable failure in the toolkit is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

std::string to_string(const Integer& value);
// Canonical form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);
Rational parse_rational(std::string_view text);
/// num/den in lowest terms (den != 0).
Rational ratio_of(long num, long den);

Integer gcd(const Integer& a, const Integer& b);

}  // namespace scltopo
