#include "avforge/number_field.hpp"

#include "avforge/error.hpp"
#include "avforge/matrix.hpp"

namespace avforge {

NumberFieldElement::NumberFieldElement(IntPolynomial field_poly, IntPolynomial numerator, Int denominator)
    : field_(std::move(field_poly)), num_(std::move(numerator)), den_(std::move(denominator)) {
  require(field_.degree() >= 1 && field_.is_monic(), "number field: defining polynomial must be monic of degree >= 1");
  require(den_ != 0, "number field: zero denominator");
  normalize();
}

void NumberFieldElement::normalize() {
  if (num_.degree() >= field_.degree()) num_ = num_.divmod_monic(field_).second;
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Int g;
  const Int c = num_.content();
  mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    std::vector<Int> v(num_.coefficients());
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    num_ = IntPolynomial(std::move(v));
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

NumberFieldElement NumberFieldElement::rational(const IntPolynomial& field_poly, const Rational& value) {
  return NumberFieldElement(field_poly, IntPolynomial::constant(value.get_num()), value.get_den());
}

NumberFieldElement NumberFieldElement::generator(const IntPolynomial& field_poly) {
  return NumberFieldElement(field_poly, IntPolynomial::x());
}

NumberFieldElement NumberFieldElement::from_coordinates(const IntPolynomial& field_poly,
                                                        const std::vector<Rational>& coords) {
  Int den = 1;
  for (const auto& c : coords) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> num;
  for (const auto& c : coords) num.push_back(c.get_num() * (den / c.get_den()));
  return NumberFieldElement(field_poly, IntPolynomial(std::move(num)), den);
}

std::vector<Rational> NumberFieldElement::coordinates() const {
  std::vector<Rational> v(static_cast<std::size_t>(field_.degree()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = Rational(num_.coeff(i), den_);
    v[i].canonicalize();
  }
  return v;
}

NumberFieldElement operator+(const NumberFieldElement& a, const NumberFieldElement& b) {
  require(a.field_ == b.field_, "number field: mismatched fields");
  return NumberFieldElement(a.field_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

NumberFieldElement operator-(const NumberFieldElement& a, const NumberFieldElement& b) {
  require(a.field_ == b.field_, "number field: mismatched fields");
  return NumberFieldElement(a.field_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

NumberFieldElement operator*(const NumberFieldElement& a, const NumberFieldElement& b) {
  require(a.field_ == b.field_, "number field: mismatched fields");
  return NumberFieldElement(a.field_, (a.num_ * b.num_).divmod_monic(a.field_).second, a.den_ * b.den_);
}

NumberFieldElement operator*(const NumberFieldElement& a, const Rational& c) {
  return NumberFieldElement(a.field_, a.num_ * c.get_num(), a.den_ * c.get_den());
}

Rational NumberFieldElement::norm() const {
  if (num_.is_zero()) return 0;
  Rational r(resultant(field_, num_), pow_int(den_, static_cast<unsigned long>(field_.degree())));
  r.canonicalize();
  return r;
}

std::size_t NumberFieldElement::max_coefficient_bits() const {
  return std::max(num_.max_coefficient_bits(), mpz_sizeinbase(den_.get_mpz_t(), 2));
}

NumberFieldElement power_element(const NumberFieldElement& e, const Int& n, std::size_t bit_bound) {
  require(n >= 0, "power_element: negative exponent");
  auto guard = [&](const NumberFieldElement& x) {
    if (x.max_coefficient_bits() > bit_bound)
      fail(ErrorKind::ExpansionTooLarge,
           "expansion too large: intermediate coefficients exceed " + std::to_string(bit_bound) + " bits");
  };
  NumberFieldElement result = NumberFieldElement::rational(e.field_poly(), 1);
  const std::size_t bits = n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    guard(result);
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      result = result * e;
      guard(result);
    }
  }
  return result;
}

IntPolynomial minimal_polynomial(const NumberFieldElement& e) {
  std::vector<std::vector<Rational>> powers;
  NumberFieldElement x = NumberFieldElement::rational(e.field_poly(), 1);
  for (int i = 0; i <= e.field_degree(); ++i) {
    powers.push_back(x.coordinates());
    x = x * e;
  }
  auto relation = first_linear_relation(powers);
  require(relation.has_value(), "minimal_polynomial: no relation found (field polynomial not monic?)");
  return RatPolynomial(*relation).to_primitive();
}

NumberFieldElement evaluate(const RatPolynomial& poly, const NumberFieldElement& at) {
  NumberFieldElement acc = NumberFieldElement::rational(at.field_poly(), 0);
  for (int i = poly.degree(); i >= 0; --i)
    acc = acc * at + NumberFieldElement::rational(at.field_poly(), poly.coeff(static_cast<std::size_t>(i)));
  return acc;
}

} // namespace avforge
