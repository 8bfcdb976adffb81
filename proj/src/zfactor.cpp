#include "avforge/zfactor.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/prime_field.hpp"

#include <algorithm>
#include <set>

namespace avforge {

IntPolynomial IntFactorization::recompose() const {
  IntPolynomial acc = IntPolynomial::constant(content);
  for (const auto& f : factors) acc = acc * f.factor.pow(f.multiplicity);
  return acc;
}

namespace {

// Dense polynomials with Int coefficients reduced to the symmetric range mod m.
using ZPoly = std::vector<Int>;

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly reduce(ZPoly a, const Int& m) {
  for (auto& c : a) c = arith::mod(c, m);
  trim(a);
  return a;
}

ZPoly mul(const ZPoly& a, const ZPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return reduce(std::move(r), m);
}

ZPoly add(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (i < a.size() ? a[i] : Int(0)) + (i < b.size() ? b[i] : Int(0));
  return reduce(std::move(r), m);
}

ZPoly sub(const ZPoly& a, const ZPoly& b, const Int& m) {
  ZPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = (i < a.size() ? a[i] : Int(0)) - (i < b.size() ? b[i] : Int(0));
  return reduce(std::move(r), m);
}

// Division by a monic divisor mod m.
std::pair<ZPoly, ZPoly> divmod_monic(ZPoly a, const ZPoly& d, const Int& m) {
  const std::size_t dn = d.size() - 1;
  if (a.size() <= dn) return {{}, a};
  ZPoly q(a.size() - dn);
  for (std::size_t i = a.size(); i-- > dn;) {
    const Int c = arith::mod(a[i], m);
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) a[i - dn + j] -= c * d[j];
  }
  a.resize(dn);
  return {reduce(std::move(q), m), reduce(std::move(a), m)};
}

ZPoly from_field(const PrimeFieldPoly& f) {
  ZPoly r;
  for (auto c : f.coefficients()) r.push_back(from_u64(c));
  return r;
}

// s, t with s g + t h = 1 over F_p for coprime g, h.
std::pair<ZPoly, ZPoly> bezout_mod_p(const PrimeFieldPoly& g, const PrimeFieldPoly& h) {
  const std::uint64_t p = g.modulus();
  PrimeFieldPoly r0 = g, r1 = h;
  PrimeFieldPoly s0 = PrimeFieldPoly::constant(p, 1), s1(p);
  PrimeFieldPoly t0(p), t1 = PrimeFieldPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    PrimeFieldPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  require(r0.degree() == 0, "Hensel lifting: factors are not coprime mod p");
  const PrimeFieldPoly inv = PrimeFieldPoly::constant(p, arith::inverse_mod(r0.leading(), p));
  return {from_field(s0 * inv), from_field(t0 * inv)};
}

// Quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic  ->  same mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const Int& m2) {
  const ZPoly e = sub(f, mul(g, h, m2), m2);
  auto [q, r] = divmod_monic(mul(s, e, m2), h, m2);
  const ZPoly g2 = add(add(g, mul(t, e, m2), m2), mul(q, g, m2), m2);
  const ZPoly h2 = add(h, r, m2);
  ZPoly b = sub(add(mul(s, g2, m2), mul(t, h2, m2), m2), ZPoly{1}, m2);
  auto [c, d] = divmod_monic(mul(s, b, m2), h2, m2);
  s = sub(s, d, m2);
  t = sub(sub(t, mul(t, b, m2), m2), mul(c, g2, m2), m2);
  g = g2;
  h = h2;
}

// Lift f = lc * u_1 ... u_r (monic u_i mod p) to modulus p^a.
std::vector<ZPoly> multifactor_lift(const IntPolynomial& f, const std::vector<PrimeFieldPoly>& u, std::uint64_t p,
                                    unsigned a) {
  const Int pa = pow_int(from_u64(p), a);
  std::vector<ZPoly> lifted;
  ZPoly current = reduce(f.coefficients(), pa);
  // current is lc * (remaining product); lc is only kept on the first factor of each split
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    PrimeFieldPoly rest = PrimeFieldPoly::constant(p, 1);
    for (std::size_t j = i + 1; j < u.size(); ++j) rest = rest * u[j];
    PrimeFieldPoly lc_mod(p, IntPolynomial::constant(current.back()));
    PrimeFieldPoly g_mod = u[i] * lc_mod;
    auto [s, t] = bezout_mod_p(g_mod, rest);
    ZPoly g = from_field(g_mod), h = from_field(rest);
    Int m = from_u64(p);
    unsigned reached = 1;
    while (reached < a) {
      const unsigned next = std::min(2 * reached, a);
      const Int m2 = pow_int(from_u64(p), next);
      hensel_step(current, g, h, s, t, m2);
      reached = next;
      m = m2;
    }
    // g carries lc; normalize to monic by dividing by lc mod p^a
    Int lc = current.back();
    Int inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pa.get_mpz_t());
    for (auto& c : g) c = arith::mod(c * inv, pa);
    lifted.push_back(g);
    // continue with monic h scaled by lc so the next split sees the same leading coefficient
    for (auto& c : h) c = arith::mod(c * lc, pa);
    current = h;
  }
  Int lc = current.back();
  Int inv;
  mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pa.get_mpz_t());
  for (auto& c : current) c = arith::mod(c * inv, pa);
  lifted.push_back(current);
  return lifted;
}

IntPolynomial symmetric_lift(const ZPoly& a, const Int& m) {
  const Int half = m / 2;
  std::vector<Int> v;
  for (const auto& c : a) v.push_back(c > half ? Int(c - m) : c);
  return IntPolynomial(std::move(v));
}

bool good_prime(const IntPolynomial& f, std::uint64_t p) {
  if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return false;
  PrimeFieldPoly g(p, f);
  return gcd(g, g.derivative()).degree() == 0;
}

// Zassenhaus on a primitive squarefree f with positive leading coefficient.
std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& f) {
  if (f.degree() <= 1) return {f};
  // choose the good prime (among the first few) with fewest modular factors
  std::uint64_t best_p = 0;
  std::vector<PrimeFieldPoly> best;
  int found = 0;
  for (std::uint64_t p = 3; found < 5; p = arith::next_prime(p + 1)) {
    if (!good_prime(f, p)) continue;
    ++found;
    auto fac = factor_mod(f, p);
    if (fac.factors.size() == 1) return {f};
    if (best_p == 0 || fac.factors.size() < best.size()) {
      best_p = p;
      best.clear();
      for (auto& piece : fac.factors) best.push_back(piece.factor);
    }
  }
  if (f.degree() > kZassenhausMaxDegree)
    fail(ErrorKind::Unsupported, "factorization over Z is limited to degree " + std::to_string(kZassenhausMaxDegree));

  // Mignotte-style bound on factor coefficients, times lc for the scaled candidate
  Int norm2 = 0;
  for (const auto& c : f.coefficients()) norm2 += c * c;
  Int norm = sqrt(norm2) + 1;
  const Int bound = 2 * (Int(1) << f.degree()) * norm * abs(f.leading());
  unsigned a = 1;
  Int pa = from_u64(best_p);
  while (pa <= bound) {
    pa *= best_p;
    ++a;
  }
  std::vector<ZPoly> lifted = multifactor_lift(f, best, best_p, a);

  std::vector<IntPolynomial> result;
  IntPolynomial rest = f;
  std::vector<std::size_t> remaining(lifted.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  for (std::size_t k = 1; 2 * k <= remaining.size();) {
    bool split = false;
    std::vector<bool> pick(remaining.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      ZPoly prod{rest.leading()};
      for (std::size_t i = 0; i < remaining.size(); ++i)
        if (pick[i]) prod = mul(prod, lifted[remaining[i]], pa);
      IntPolynomial cand = symmetric_lift(prod, pa).primitive_part();
      if (cand.degree() > 0 && rest.divisible_by(cand)) {
        result.push_back(cand);
        rest = rest.divide_exact(cand).primitive_part();
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < remaining.size(); ++i)
          if (!pick[i]) keep.push_back(remaining[i]);
        remaining = keep;
        split = true;
        break;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!split) ++k;
  }
  if (rest.degree() > 0) result.push_back(rest);
  return result;
}

bool integer_root_free(const IntPolynomial& p) {
  // monic-or-not: rational roots are d/e with d | a_0, e | lc; only attempted when both factor quickly
  if (p.coeff(0) == 0) return false;
  arith::FactorBudget quick;
  quick.rho_iterations = 1 << 14;
  try {
    auto num = arith::divisors(arith::factor(abs(p.coeff(0)), quick));
    auto den = arith::divisors(arith::factor(abs(p.leading()), quick));
    if (num.size() * den.size() > 20000) return true;
    for (const auto& d : num)
      for (const auto& e : den)
        for (int sign : {1, -1}) {
          Rational r(d * sign, e);
          r.canonicalize();
          if (p.eval(r) == 0) return false;
        }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BudgetExceeded) throw;
  }
  return true;
}

} // namespace

IntFactorization factor_over_Z(const IntPolynomial& p) {
  require(!p.is_zero(), "factor_over_Z: zero polynomial");
  IntFactorization out;
  out.content = p.content();
  if (p.leading() < 0) out.content = -out.content;
  if (p.degree() == 0) return out;
  IntPolynomial f = p.primitive_part();

  // Yun's squarefree decomposition over Q
  std::vector<std::pair<IntPolynomial, unsigned>> parts;
  IntPolynomial a = gcd(f, f.derivative());
  RatPolynomial b = RatPolynomial(f).divmod(RatPolynomial(a)).first;
  RatPolynomial c = RatPolynomial(f.derivative()).divmod(RatPolynomial(a)).first;
  auto deriv = [](const RatPolynomial& r) {
    std::vector<Rational> v;
    for (std::size_t i = 1; i < r.coefficients().size(); ++i) v.push_back(r.coefficients()[i] * static_cast<long>(i));
    return RatPolynomial(std::move(v));
  };
  RatPolynomial d = c - deriv(b);
  for (unsigned i = 1; b.degree() > 0; ++i) {
    IntPolynomial ai = d.is_zero() ? b.to_primitive() : gcd(b.to_primitive(), d.to_primitive());
    RatPolynomial ar(ai);
    b = b.divmod(ar).first;
    c = d.divmod(ar).first;
    d = c - deriv(b);
    if (ai.degree() > 0) parts.emplace_back(ai, i);
  }
  for (const auto& [part, mult] : parts)
    for (auto& irr : factor_squarefree(part)) out.factors.push_back({irr, mult});
  std::sort(out.factors.begin(), out.factors.end(), [](const IntFactor& x, const IntFactor& y) {
    if (x.factor.degree() != y.factor.degree()) return x.factor.degree() < y.factor.degree();
    return x.factor.coefficients() < y.factor.coefficients();
  });
  // fix the sign so the recomposition matches exactly
  IntPolynomial prod = IntPolynomial::constant(1);
  for (const auto& fac : out.factors) prod = prod * fac.factor.pow(fac.multiplicity);
  if (prod.leading() * out.content != p.leading()) out.content = -out.content;
  return out;
}

bool is_irreducible_over_Q(const IntPolynomial& p) {
  if (p.degree() <= 0) return false;
  if (p.degree() == 1) return true;
  if (!is_squarefree(p)) return false;
  const IntPolynomial f = p.primitive_part();
  if (!integer_root_free(f)) return false;

  // possible factor degrees are subset sums of every good prime's pattern
  std::set<int> possible;
  for (int i = 1; i < f.degree(); ++i) possible.insert(i);
  int used = 0;
  for (std::uint64_t l = 3; used < 3 && l < 1000; l = arith::next_prime(l + 1)) {
    if (!good_prime(f, l)) continue;
    ++used;
    auto pattern = factor_mod(f, l).degree_pattern();
    std::set<int> sums{0};
    for (int d : pattern) {
      std::set<int> next = sums;
      for (int s : sums) next.insert(s + d);
      sums = std::move(next);
    }
    std::set<int> keep;
    for (int s : possible)
      if (sums.count(s)) keep.insert(s);
    possible = std::move(keep);
    if (possible.empty()) return true;
  }
  return factor_over_Z(f).factors.size() == 1;
}

} // namespace avforge
