#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace avforge {

using Int = mpz_class;
using Rational = mpq_class;

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

/// Exact rational rendered as "num/den" (or "num" when integral).
inline std::string to_fraction(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Int parse_int(const std::string& text);
Rational parse_fraction(const std::string& text);

inline std::uint64_t to_u64(const Int& v) {
  // mpz_get_ui is 64-bit on LP64
  return mpz_get_ui(v.get_mpz_t());
}

inline Int from_u64(std::uint64_t v) {
  Int r;
  mpz_set_ui(r.get_mpz_t(), v);
  return r;
}

/// True when v fits a machine word with headroom for 128-bit products.
inline bool fits_word(const Int& v) { return v >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 63; }

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

} // namespace avforge
