#pragma once

#include "avforge/types.hpp"

#include <string>
#include <utility>
#include <vector>

namespace avforge {

/// Dense polynomial with exact integer coefficients, constant term first.
///
/// The coefficient vector is kept trimmed: the last entry is nonzero unless
/// the polynomial is zero, in which case the vector is empty.
class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial constant(const Int& c);
  static IntPolynomial monomial(const Int& c, std::size_t degree);
  static IntPolynomial x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

  const std::vector<Int>& coefficients() const { return coeffs_; }
  /// Coefficient of X^i; zero past the degree.
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
  const Int& leading() const { return coeffs_.back(); }

  Int eval(const Int& x) const;
  Rational eval(const Rational& x) const;
  IntPolynomial derivative() const;
  Int content() const;
  IntPolynomial primitive_part() const;

  /// P(c·X) coefficientwise: a_i c^i.
  IntPolynomial scale_argument(const Int& c) const;
  /// X^deg · P(1/X).
  IntPolynomial reversed() const;

  /// Quotient and remainder by a monic divisor (exact over Z).
  std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& divisor) const;
  /// Exact division over Z; throws Domain if the divisor does not divide.
  IntPolynomial divide_exact(const IntPolynomial& divisor) const;
  bool divisible_by(const IntPolynomial& divisor) const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const Int& c);

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(IntPolynomial a, const Int& c) { return a *= c; }
  friend IntPolynomial operator-(const IntPolynomial& a);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  IntPolynomial pow(unsigned e) const;

  /// Human readable, highest degree first: "X^2 - 10*X + 125".
  std::string to_string() const;
  /// Constant-term-first decimal list: "125,-10,1".
  std::string to_csv() const;
  static IntPolynomial from_csv(const std::string& text);

  std::size_t max_coefficient_bits() const;

private:
  void trim();
  std::vector<Int> coeffs_;
};

/// Polynomial over Q, constant term first; used for gcds and exact linear algebra.
class RatPolynomial {
public:
  RatPolynomial() = default;
  explicit RatPolynomial(std::vector<Rational> coefficients);
  explicit RatPolynomial(const IntPolynomial& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  RatPolynomial monic() const;
  std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& divisor) const;
  /// Primitive integer polynomial with positive leading coefficient, same roots.
  IntPolynomial to_primitive() const;

  friend RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b);
  friend RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b);
  friend bool operator==(const RatPolynomial& a, const RatPolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Monic gcd over Q, returned as a primitive integer polynomial.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
bool is_squarefree(const IntPolynomial& p);

/// Resultant via fraction-free elimination on the Sylvester matrix.
Int resultant(const IntPolynomial& a, const IntPolynomial& b);
/// disc(P) = (-1)^{n(n-1)/2} Res(P, P') / lc(P).
Int discriminant(const IntPolynomial& p);

} // namespace avforge
