#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace scw {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when textual input cannot be read as an exact number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "p" for integers, "p/q" otherwise (canonical form, q > 0).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
Rational parse_rational(std::string_view text);

inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

/// Floor of a rational as an integer.
Integer floor(const Rational& value);

/// Rational with the canonicalization GMP requires after raw construction.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace scw
