#pragma once

// Certified complex root isolation and exact real-root counting.

#include "avforge/int_poly.hpp"
#include "avforge/types.hpp"

#include <complex>
#include <vector>

namespace avforge {

/// Closed complex disk with exact rational center and radius. Arithmetic is
/// rigorous: the result contains every value of the operation on members.
struct ComplexBall {
  Rational re, im, rad;

  static ComplexBall exact(const Rational& re, const Rational& im = 0) { return {re, im, 0}; }
  /// Upper bound for |z| over the disk (L1 bound on the center).
  Rational abs_upper() const;
  std::complex<double> approx() const { return {re.get_d(), im.get_d()}; }
  bool intersects(const ComplexBall& o) const;
  /// Conjugate disk.
  ComplexBall conj() const { return {re, -im, rad}; }
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const Rational& c);
/// Snap the center to the grid 2^-bits, widening the radius to compensate.
ComplexBall round_center(const ComplexBall& a, unsigned bits);

ComplexBall evaluate(const IntPolynomial& p, const ComplexBall& z);
ComplexBall evaluate(const RatPolynomial& p, const ComplexBall& z);

/// The unique integer inside the disk, when the disk pins one down.
bool pins_integer(const ComplexBall& b, Int& out);

/// Certified isolating disks for all complex roots of a squarefree polynomial.
///
/// Order: roots in the upper half plane sorted by real part descending (ties by
/// imaginary part), then their conjugates in the same order, then real roots
/// ascending. conjugate[i] is the index of the disk holding the conjugate root.
struct ComplexEmbeddingSet {
  IntPolynomial poly;
  std::vector<ComplexBall> roots;
  std::vector<std::size_t> conjugate;
  std::size_t nonreal_pairs = 0;
  unsigned precision_bits = 0;

  bool is_real(std::size_t i) const { return conjugate[i] == i; }
  /// Index of the single root disk meeting b, or roots.size() when ambiguous.
  std::size_t locate(const ComplexBall& b) const;
};

inline constexpr unsigned kDefaultPrecisionBits = 128;
inline constexpr unsigned kMaxPrecisionBits = 1u << 14;

/// Aberth iteration in floating point, then exact inclusion-disk certification
/// (disjoint disks of radius n|W_i| around the approximations, W_i the
/// Weierstrass correction). Precision doubles until certification succeeds.
/// Throws Domain for non-squarefree input, PrecisionExhausted past max_bits.
ComplexEmbeddingSet certified_roots(const IntPolynomial& p, unsigned precision_bits = kDefaultPrecisionBits,
                                    unsigned max_bits = kMaxPrecisionBits);

/// The same roots at higher precision, kept in the index order of `set`.
/// Throws PrecisionExhausted when a new disk cannot be matched unambiguously.
ComplexEmbeddingSet refine(const ComplexEmbeddingSet& set, unsigned precision_bits);

/// Distinct real roots of p in (a, b] by Sturm sequences; p nonzero.
int count_real_roots(const IntPolynomial& p, const Rational& a, const Rational& b);
/// Distinct real roots of p over the whole line.
int count_real_roots(const IntPolynomial& p);
/// Distinct real roots of p in (a, +inf).
int count_real_roots_above(const IntPolynomial& p, const Rational& a);

} // namespace avforge
