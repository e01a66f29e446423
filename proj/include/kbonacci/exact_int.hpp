#pragma once

// Arbitrary-precision signed integers. Everything in the library is exact;
// the scalar domain is GMP's mpz_class.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kbonacci {

using ExactInt = mpz_class;

/// Signed term index; negative values select the backward extension.
using TermIndex = std::int64_t;

inline std::string to_decimal(const ExactInt& v) { return v.get_str(10); }

/// Parses an optionally signed base-10 integer. Throws std::invalid_argument.
ExactInt parse_decimal(const std::string& text);

inline ExactInt pow2(unsigned long e) {
  ExactInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline ExactInt pow_ui(unsigned long base, unsigned long e) {
  ExactInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

/// Number of decimal digits of |v| (1 for zero).
std::size_t decimal_digits(const ExactInt& v);

}  // namespace kbonacci
