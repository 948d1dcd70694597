#include "scltopo/arith.hpp"

namespace scltopo {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InvalidComplex: return "invalid-complex";
    case ErrorKind::UnknownCell: return "unknown-cell";
    case ErrorKind::NotSurface: return "not-surface";
    case ErrorKind::NotSubcomplex: return "not-subcomplex";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::InvalidSurface: return "invalid-surface";
    case ErrorKind::MoveNotApplicable: return "move-not-applicable";
    case ErrorKind::InvalidChain: return "invalid-chain";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::Parse, "empty rational");
  Rational r;
  try {
    if (r.set_str(s, 10) != 0) throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Rational ratio_of(long num, long den) {
  if (den == 0) throw Error(ErrorKind::Internal, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace scltopo
