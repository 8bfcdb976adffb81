#pragma once

// Elements of a monogenic number field Q[x]/(f), f monic irreducible.

#include "avforge/int_poly.hpp"
#include "avforge/types.hpp"

#include <vector>

namespace avforge {

/// Default guard on intermediate numerator size in power_element.
inline constexpr std::size_t kDefaultExpansionBits = std::size_t{1} << 20;

/// numerator(x) / denominator mod field_poly. The numerator has degree below
/// deg(field_poly) and shares no common factor with the positive denominator.
class NumberFieldElement {
public:
  NumberFieldElement(IntPolynomial field_poly, IntPolynomial numerator, Int denominator = 1);

  static NumberFieldElement rational(const IntPolynomial& field_poly, const Rational& value);
  static NumberFieldElement generator(const IntPolynomial& field_poly);
  /// sum c_i x^i with rational coordinates.
  static NumberFieldElement from_coordinates(const IntPolynomial& field_poly, const std::vector<Rational>& coords);

  const IntPolynomial& field_poly() const { return field_; }
  const IntPolynomial& numerator() const { return num_; }
  const Int& denominator() const { return den_; }
  int field_degree() const { return field_.degree(); }

  /// Coordinates in the power basis 1, x, ..., x^{n-1}.
  std::vector<Rational> coordinates() const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.degree() <= 0; }
  bool is_integral_in_power_basis() const { return den_ == 1; }

  friend NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b);
  friend NumberFieldElement operator*(const NumberFieldElement& a, const Rational& c);
  friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    return a.field_ == b.field_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Exact norm to Q: Res(f, numerator) / denominator^n.
  Rational norm() const;
  std::size_t max_coefficient_bits() const;

private:
  void normalize();
  IntPolynomial field_;
  IntPolynomial num_;
  Int den_;
};

/// e^n by square-and-multiply; throws ExpansionTooLarge ("expansion too large")
/// once an intermediate numerator or denominator exceeds bit_bound bits.
NumberFieldElement power_element(const NumberFieldElement& e, const Int& n,
                                 std::size_t bit_bound = kDefaultExpansionBits);

/// Primitive integer minimal polynomial of e over Q (monic when e is integral),
/// from the first linear relation among 1, e, e^2, ...
IntPolynomial minimal_polynomial(const NumberFieldElement& e);

/// poly(at) computed inside the field of `at`.
NumberFieldElement evaluate(const RatPolynomial& poly, const NumberFieldElement& at);

} // namespace avforge
