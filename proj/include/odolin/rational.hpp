#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace odolin {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" (optionally signed). Decimal notation is rejected so
/// that masses are never ingested through floating point. Throws
/// Error(Config) on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a non-negative decimal integer.
Integer parse_integer(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Decimal rendering with `digits` significant digits. Works for values far
/// outside the double range by going through logarithms when needed.
std::string to_decimal(const Rational& q, int digits = 12);

/// Decimal rendering of q^(1/p) for q > 0.
std::string root_decimal(const Rational& q, const Rational& p, int digits = 12);

inline Rational pow_int(const Rational& base, unsigned exp) {
  Rational out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

inline Integer pow2(unsigned exp) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exp);
  return out;
}

/// Fits in uint64_t?
inline bool fits_u64(const Integer& z) {
  return sgn(z) >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Integer& z);

}  // namespace odolin
