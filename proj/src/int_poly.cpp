#include "avforge/int_poly.hpp"

#include "avforge/error.hpp"
#include "avforge/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace avforge {

Int parse_int(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Int v;
  if (t.empty() || v.set_str(t, 10) != 0) fail(ErrorKind::Domain, "not an integer: '" + text + "'");
  return v;
}

Rational parse_fraction(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorKind::Domain, "zero denominator: '" + text + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

IntPolynomial::IntPolynomial(std::vector<Int> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::constant(const Int& c) { return IntPolynomial(std::vector<Int>{c}); }

IntPolynomial IntPolynomial::monomial(const Int& c, std::size_t degree) {
  std::vector<Int> v(degree + 1);
  v[degree] = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPolynomial::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Int> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

Int IntPolynomial::content() const {
  Int g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  Int g = content();
  if (leading() < 0) g = -g;
  std::vector<Int> v(coeffs_);
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::scale_argument(const Int& c) const {
  std::vector<Int> v(coeffs_);
  Int power = 1;
  for (auto& a : v) {
    a *= power;
    power *= c;
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::reversed() const {
  std::vector<Int> v(coeffs_.rbegin(), coeffs_.rend());
  return IntPolynomial(std::move(v));
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod_monic(const IntPolynomial& divisor) const {
  require(divisor.is_monic(), "divmod_monic: divisor must be monic");
  const int n = degree(), m = divisor.degree();
  if (n < m) return {IntPolynomial(), *this};
  std::vector<Int> rem(coeffs_);
  std::vector<Int> quo(static_cast<std::size_t>(n - m + 1));
  for (int i = n; i >= m; --i) {
    const Int c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    quo[static_cast<std::size_t>(i - m)] = c;
    for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(i - m + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(m));
  return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
}

namespace {

bool try_divide_exact(const IntPolynomial& num, const IntPolynomial& den, IntPolynomial& out) {
  require(!den.is_zero(), "division by the zero polynomial");
  if (num.is_zero()) {
    out = IntPolynomial();
    return true;
  }
  const int n = num.degree(), m = den.degree();
  if (n < m) return false;
  std::vector<Int> rem(num.coefficients());
  std::vector<Int> quo(static_cast<std::size_t>(n - m + 1));
  const Int& lc = den.leading();
  for (int i = n; i >= m; --i) {
    Int c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!mpz_divisible_p(c.get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), lc.get_mpz_t());
    quo[static_cast<std::size_t>(i - m)] = c;
    for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(i - m + j)] -= c * den.coeff(static_cast<std::size_t>(j));
  }
  for (int i = 0; i < m; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  out = IntPolynomial(std::move(quo));
  return true;
}

} // namespace

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
  IntPolynomial q;
  if (!try_divide_exact(*this, divisor, q)) fail(ErrorKind::Domain, "divide_exact: " + divisor.to_string() + " does not divide " + to_string());
  return q;
}

bool IntPolynomial::divisible_by(const IntPolynomial& divisor) const {
  IntPolynomial q;
  return try_divide_exact(*this, divisor, q);
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const Int& c) {
  for (auto& a : coeffs_) a *= c;
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial operator-(const IntPolynomial& a) {
  IntPolynomial r(a);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial result = constant(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::string IntPolynomial::to_csv() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ",";
    s += coeffs_[i].get_str();
  }
  return s;
}

IntPolynomial IntPolynomial::from_csv(const std::string& text) {
  std::vector<Int> v;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) v.push_back(parse_int(item));
  if (v.empty()) fail(ErrorKind::Domain, "empty coefficient list");
  return IntPolynomial(std::move(v));
}

std::size_t IntPolynomial::max_coefficient_bits() const {
  std::size_t bits = 0;
  for (const auto& c : coeffs_) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

// ---------------------------------------------------------------------------

RatPolynomial::RatPolynomial(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

RatPolynomial::RatPolynomial(const IntPolynomial& p) {
  for (const auto& c : p.coefficients()) coeffs_.emplace_back(c);
}

void RatPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RatPolynomial RatPolynomial::monic() const {
  if (is_zero()) return {};
  std::vector<Rational> v(coeffs_);
  const Rational lc = leading();
  for (auto& c : v) c /= lc;
  return RatPolynomial(std::move(v));
}

std::pair<RatPolynomial, RatPolynomial> RatPolynomial::divmod(const RatPolynomial& divisor) const {
  require(!divisor.is_zero(), "division by the zero polynomial");
  const int n = degree(), m = divisor.degree();
  if (n < m) return {RatPolynomial(), *this};
  std::vector<Rational> rem(coeffs_);
  std::vector<Rational> quo(static_cast<std::size_t>(n - m + 1));
  for (int i = n; i >= m; --i) {
    Rational c = rem[static_cast<std::size_t>(i)] / divisor.leading();
    quo[static_cast<std::size_t>(i - m)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(i - m + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(m));
  return {RatPolynomial(std::move(quo)), RatPolynomial(std::move(rem))};
}

IntPolynomial RatPolynomial::to_primitive() const {
  if (is_zero()) return {};
  Int l = 1;
  for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Int> v;
  v.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    Rational s = c * Rational(l);
    v.push_back(s.get_num());
  }
  return IntPolynomial(std::move(v)).primitive_part();
}

RatPolynomial operator*(const RatPolynomial& a, const RatPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RatPolynomial(std::move(v));
}

RatPolynomial operator-(const RatPolynomial& a, const RatPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return RatPolynomial(std::move(v));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  RatPolynomial x(a), y(b);
  while (!y.is_zero()) {
    auto r = x.divmod(y).second;
    x = std::move(y);
    y = RatPolynomial(r.to_primitive());
  }
  return x.to_primitive();
}

bool is_squarefree(const IntPolynomial& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

Int resultant(const IntPolynomial& a, const IntPolynomial& b) {
  require(!a.is_zero() && !b.is_zero(), "resultant of the zero polynomial");
  const int n = a.degree(), m = b.degree();
  if (n == 0) return pow_int(a.leading(), static_cast<unsigned>(m));
  if (m == 0) return pow_int(b.leading(), static_cast<unsigned>(n));
  const std::size_t size = static_cast<std::size_t>(n + m);
  IntMatrix s(size, size);
  // rows 0..m-1 carry a, rows m..m+n-1 carry b; columns run from X^{n+m-1} down
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + n - i)) = a.coeff(static_cast<std::size_t>(i));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s(static_cast<std::size_t>(m + r), static_cast<std::size_t>(r + m - i)) = b.coeff(static_cast<std::size_t>(i));
  return s.determinant();
}

Int discriminant(const IntPolynomial& p) {
  require(p.degree() >= 1, "discriminant needs degree >= 1");
  const long n = p.degree();
  if (n == 1) return 1;
  Int r = resultant(p, p.derivative());
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.leading().get_mpz_t());
  if (((n * (n - 1)) / 2) % 2 == 1) r = -r;
  return r;
}

} // namespace avforge
