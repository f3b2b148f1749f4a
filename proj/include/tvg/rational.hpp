#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <regex>
#include <stdexcept>
#include <string>

namespace tvg {

/// Exact scalar for all combinatorial geometry. GMP rationals are kept
/// canonical by the backend: reduced to lowest terms, denominator positive.
/// No operation in the exact layers ever rounds.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Canonical serialization "p/q"; "/q" omitted when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Parses the canonical "p/q" form (or plain integer "p"). Rejects anything
/// else, including zero denominators, with a structured error.
inline Rational rational_from_string(const std::string& s) {
  static const std::regex pattern(R"(^-?[0-9]+(/[0-9]+)?$)");
  if (!std::regex_match(s, pattern))
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string den = s.substr(slash + 1);
    if (den.find_first_not_of('0') == std::string::npos)
      throw std::invalid_argument("zero denominator in rational: '" + s + "'");
  }
  return Rational(s);
}

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace tvg
