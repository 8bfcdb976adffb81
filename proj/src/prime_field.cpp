#include "avforge/prime_field.hpp"

#include "avforge/error.hpp"

#include <algorithm>
#include <sstream>

namespace avforge {

using arith::mul_mod;

PrimeFieldPoly::PrimeFieldPoly(std::uint64_t modulus, std::vector<std::uint64_t> coefficients)
    : mod_(modulus), coeffs_(std::move(coefficients)) {
  require(modulus >= 2, "PrimeFieldPoly: modulus must be >= 2");
  for (auto& c : coeffs_) c %= mod_;
  trim();
}

PrimeFieldPoly::PrimeFieldPoly(std::uint64_t modulus, const IntPolynomial& p) : mod_(modulus) {
  require(modulus >= 2, "PrimeFieldPoly: modulus must be >= 2");
  const Int l = from_u64(modulus);
  coeffs_.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) coeffs_.push_back(to_u64(arith::mod(c, l)));
  trim();
}

void PrimeFieldPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PrimeFieldPoly PrimeFieldPoly::monic() const {
  if (is_zero()) return *this;
  const std::uint64_t inv = arith::inverse_mod(leading(), mod_);
  std::vector<std::uint64_t> v(coeffs_);
  for (auto& c : v) c = mul_mod(c, inv, mod_);
  return PrimeFieldPoly(mod_, std::move(v));
}

PrimeFieldPoly PrimeFieldPoly::derivative() const {
  std::vector<std::uint64_t> v;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) v.push_back(mul_mod(coeffs_[i], i % mod_, mod_));
  return PrimeFieldPoly(mod_, std::move(v));
}

std::uint64_t PrimeFieldPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  x %= mod_;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (mul_mod(acc, x, mod_) + *it) % mod_;
  return acc;
}

std::pair<PrimeFieldPoly, PrimeFieldPoly> PrimeFieldPoly::divmod(const PrimeFieldPoly& d) const {
  require(!d.is_zero(), "PrimeFieldPoly: division by zero");
  const int n = degree(), m = d.degree();
  if (n < m) return {PrimeFieldPoly(mod_), *this};
  std::vector<std::uint64_t> rem(coeffs_), quo(static_cast<std::size_t>(n - m + 1), 0);
  const std::uint64_t inv = arith::inverse_mod(d.leading(), mod_);
  for (int i = n; i >= m; --i) {
    const std::uint64_t c = mul_mod(rem[static_cast<std::size_t>(i)], inv, mod_);
    quo[static_cast<std::size_t>(i - m)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= m; ++j) {
      auto& r = rem[static_cast<std::size_t>(i - m + j)];
      r = (r + mod_ - mul_mod(c, d.coeffs_[static_cast<std::size_t>(j)], mod_)) % mod_;
    }
  }
  rem.resize(static_cast<std::size_t>(m));
  return {PrimeFieldPoly(mod_, std::move(quo)), PrimeFieldPoly(mod_, std::move(rem))};
}

PrimeFieldPoly operator+(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  std::vector<std::uint64_t> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.mod_;
  return PrimeFieldPoly(a.mod_, std::move(v));
}

PrimeFieldPoly operator-(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  std::vector<std::uint64_t> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + a.mod_ - b.coeff(i)) % a.mod_;
  return PrimeFieldPoly(a.mod_, std::move(v));
}

PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  if (a.is_zero() || b.is_zero()) return PrimeFieldPoly(a.mod_);
  std::vector<unsigned __int128> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a.coeffs_[i]) * b.coeffs_[j];
      acc[i + j] %= a.mod_;
    }
  }
  std::vector<std::uint64_t> v(acc.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::uint64_t>(acc[i]);
  return PrimeFieldPoly(a.mod_, std::move(v));
}

bool operator<(const PrimeFieldPoly& a, const PrimeFieldPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto x = a.coeff(static_cast<std::size_t>(i)), y = b.coeff(static_cast<std::size_t>(i));
    if (x != y) return x < y;
  }
  return false;
}

PrimeFieldPoly PrimeFieldPoly::pow_mod(const Int& e, const PrimeFieldPoly& m) const {
  require(e >= 0, "pow_mod: negative exponent");
  PrimeFieldPoly result = PrimeFieldPoly::constant(mod_, 1) % m;
  const PrimeFieldPoly base = *this % m;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * base) % m;
  }
  return result;
}

std::string PrimeFieldPoly::to_string() const {
  std::vector<Int> v;
  for (auto c : coeffs_) v.push_back(from_u64(c));
  return IntPolynomial(std::move(v)).to_string() + " (mod " + std::to_string(mod_) + ")";
}

PrimeFieldPoly gcd(PrimeFieldPoly a, PrimeFieldPoly b) {
  while (!b.is_zero()) {
    PrimeFieldPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PrimeFieldPoly ModFactorization::recompose(std::uint64_t modulus) const {
  PrimeFieldPoly acc = PrimeFieldPoly::constant(modulus, leading);
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.multiplicity; ++i) acc = acc * f.factor;
  return acc;
}

std::vector<int> ModFactorization::degree_pattern() const {
  std::vector<int> d;
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.multiplicity; ++i) d.push_back(f.factor.degree());
  std::sort(d.begin(), d.end());
  return d;
}

bool ModFactorization::squarefree() const {
  return std::all_of(factors.begin(), factors.end(), [](const ModFactor& f) { return f.multiplicity == 1; });
}

namespace {

// f(X) = g(X^l) over F_l  ->  g (Frobenius is the identity on F_l coefficients)
PrimeFieldPoly pth_root(const PrimeFieldPoly& f) {
  const std::uint64_t l = f.modulus();
  std::vector<std::uint64_t> v;
  for (std::size_t i = 0; i < f.coefficients().size(); i += l) v.push_back(f.coefficients()[i]);
  return PrimeFieldPoly(l, std::move(v));
}

void squarefree_parts(const PrimeFieldPoly& f, unsigned scale, std::vector<std::pair<PrimeFieldPoly, unsigned>>& out) {
  if (f.degree() <= 0) return;
  const PrimeFieldPoly d = f.derivative();
  if (d.is_zero()) {
    squarefree_parts(pth_root(f), scale * static_cast<unsigned>(f.modulus()), out);
    return;
  }
  PrimeFieldPoly c = gcd(f, d);
  PrimeFieldPoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    PrimeFieldPoly y = gcd(w, c);
    PrimeFieldPoly z = (w / y).monic();
    if (z.degree() > 0) out.emplace_back(z, i * scale);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) squarefree_parts(pth_root(c.monic()), scale * static_cast<unsigned>(f.modulus()), out);
}

// squarefree monic f -> (product of all irreducible factors of degree d, d)
std::vector<std::pair<PrimeFieldPoly, int>> distinct_degree(PrimeFieldPoly f) {
  const std::uint64_t l = f.modulus();
  std::vector<std::pair<PrimeFieldPoly, int>> out;
  const PrimeFieldPoly x = PrimeFieldPoly::x(l);
  PrimeFieldPoly h = x % f;
  const Int le = from_u64(l);
  int d = 0;
  while (f.degree() >= 2 * (d + 1)) {
    ++d;
    h = h.pow_mod(le, f);
    PrimeFieldPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      f = (f / g).monic();
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

void equal_degree(const PrimeFieldPoly& f, int d, std::mt19937_64& rng, std::vector<PrimeFieldPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const std::uint64_t l = f.modulus();
  const Int lpow = pow_int(from_u64(l), static_cast<unsigned long>(d));
  for (;;) {
    std::vector<std::uint64_t> a(static_cast<std::size_t>(f.degree()));
    for (auto& c : a) c = rng() % l;
    PrimeFieldPoly r(l, std::move(a));
    if (r.degree() <= 0) continue;
    PrimeFieldPoly b(l);
    if (l == 2) {
      // trace map to F_2
      PrimeFieldPoly t = r % f;
      b = t;
      for (int i = 1; i < d; ++i) {
        t = (t * t) % f;
        b = b + t;
      }
    } else {
      b = r.pow_mod((lpow - 1) / 2, f) - PrimeFieldPoly::constant(l, 1);
    }
    PrimeFieldPoly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree((f / g).monic(), d, rng, out);
      return;
    }
  }
}

} // namespace

ModFactorization factor_mod(const PrimeFieldPoly& p, std::uint64_t seed) {
  require(!p.is_zero(), "factor_mod: polynomial is zero mod l");
  ModFactorization result;
  result.leading = p.leading();
  if (p.degree() == 0) return result;
  std::vector<std::pair<PrimeFieldPoly, unsigned>> parts;
  squarefree_parts(p.monic(), 1, parts);
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : parts) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<PrimeFieldPoly> pieces;
      equal_degree(block, d, rng, pieces);
      for (auto& piece : pieces) result.factors.push_back({std::move(piece), mult});
    }
  }
  // parts from different squarefree layers never share a factor
  std::sort(result.factors.begin(), result.factors.end(), [](const ModFactor& a, const ModFactor& b) {
    if (a.factor == b.factor) return a.multiplicity < b.multiplicity;
    return a.factor < b.factor;
  });
  return result;
}

ModFactorization factor_mod(const IntPolynomial& p, std::uint64_t l, std::uint64_t seed) {
  require(arith::is_prime_u64(l), "factor_mod: modulus must be prime");
  return factor_mod(PrimeFieldPoly(l, p), seed);
}

std::vector<std::uint64_t> roots_mod(const IntPolynomial& p, std::uint64_t l, std::uint64_t seed) {
  require(arith::is_prime_u64(l), "roots_mod: modulus must be prime");
  PrimeFieldPoly f(l, p);
  require(f.degree() == p.degree(), "roots_mod: l divides the leading coefficient");
  std::vector<std::uint64_t> roots;
  if (f.degree() <= 0) return roots;
  f = f.monic();
  const PrimeFieldPoly x = PrimeFieldPoly::x(l);
  PrimeFieldPoly g = gcd(x.pow_mod(from_u64(l), f) - x, f);
  if (g.degree() <= 0) return roots;
  std::vector<PrimeFieldPoly> linear;
  std::mt19937_64 rng(seed);
  equal_degree(g, 1, rng, linear);
  for (const auto& lin : linear) roots.push_back((l - lin.coeff(0)) % l);
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool splits_completely_mod(const IntPolynomial& p, std::uint64_t l) {
  PrimeFieldPoly f(l, p);
  if (f.degree() != p.degree() || f.degree() <= 0) return false;
  f = f.monic();
  if (gcd(f, f.derivative()).degree() > 0) return false;
  const PrimeFieldPoly x = PrimeFieldPoly::x(l);
  return (x.pow_mod(from_u64(l), f) - x).is_zero();
}

bool is_irreducible_mod(const PrimeFieldPoly& h) {
  if (h.degree() <= 0) return false;
  if (h.degree() == 1) return true;
  const PrimeFieldPoly f = h.monic();
  if (gcd(f, f.derivative()).degree() > 0) return false;
  auto blocks = distinct_degree(f);
  return blocks.size() == 1 && blocks[0].second == f.degree();
}

FiniteFieldExt::FiniteFieldExt(std::uint64_t l, PrimeFieldPoly defining) : l_(l), defining_(defining.monic()) {
  require(arith::is_prime_u64(l), "FiniteFieldExt: characteristic must be prime");
  require(defining_.modulus() == l, "FiniteFieldExt: modulus mismatch");
  require(is_irreducible_mod(defining_), "FiniteFieldExt: defining polynomial is not irreducible");
}

Int FiniteFieldExt::group_order() const { return pow_int(from_u64(l_), static_cast<unsigned long>(degree())) - 1; }

Int FiniteFieldExt::element_order(const PrimeFieldPoly& x, const arith::FactorBudget& budget) const {
  const PrimeFieldPoly r = reduce(x);
  require(!r.is_zero(), "element_order: zero has no multiplicative order");
  arith::Factorization exponent;
  try {
    exponent = arith::factor_power_minus_one(from_u64(l_), static_cast<unsigned>(degree()), budget);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded)
      fail(ErrorKind::BudgetExceeded, std::string(e.what()) + "; try a smaller field or instance");
    throw;
  }
  return arith::order_by_descent(exponent, [&](const Int& e) { return pow(r, e).is_one(); });
}

} // namespace avforge
