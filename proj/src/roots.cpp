#include "avforge/roots.hpp"

#include "avforge/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace avforge {

Rational ComplexBall::abs_upper() const { return abs(re) + abs(im) + rad; }

bool ComplexBall::intersects(const ComplexBall& o) const {
  const Rational dr = re - o.re, di = im - o.im, s = rad + o.rad;
  return dr * dr + di * di <= s * s;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  return {a.re + b.re, a.im + b.im, a.rad + b.rad};
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  return {a.re - b.re, a.im - b.im, a.rad + b.rad};
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  const Rational ma = abs(a.re) + abs(a.im), mb = abs(b.re) + abs(b.im);
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, ma * b.rad + mb * a.rad + a.rad * b.rad};
}

ComplexBall operator*(const ComplexBall& a, const Rational& c) { return {a.re * c, a.im * c, a.rad * abs(c)}; }

namespace {

// nearest multiple of 2^-bits, and the exact distance moved
Rational snap(const Rational& x, unsigned bits, Rational& moved) {
  Int scaled = x.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  Rational r(q, 1);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), bits);
  moved = abs(x - r);
  return r;
}

} // namespace

ComplexBall round_center(const ComplexBall& a, unsigned bits) {
  Rational dr, di;
  ComplexBall r;
  r.re = snap(a.re, bits, dr);
  r.im = snap(a.im, bits, di);
  r.rad = a.rad + dr + di;
  return r;
}

ComplexBall evaluate(const IntPolynomial& p, const ComplexBall& z) {
  ComplexBall acc = ComplexBall::exact(0);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * z;
    acc.re += p.coeff(static_cast<std::size_t>(i));
  }
  return acc;
}

ComplexBall evaluate(const RatPolynomial& p, const ComplexBall& z) {
  ComplexBall acc = ComplexBall::exact(0);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * z;
    acc.re += p.coeff(static_cast<std::size_t>(i));
  }
  return acc;
}

bool pins_integer(const ComplexBall& b, Int& out) {
  const Rational half(1, 2);
  if (abs(b.im) + b.rad >= half) return false;
  Rational shifted = b.re + half;
  Int n;
  mpz_fdiv_q(n.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  if (abs(b.re - n) + b.rad >= half) return false;
  out = n;
  return true;
}

std::size_t ComplexEmbeddingSet::locate(const ComplexBall& b) const {
  std::size_t hit = roots.size();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!roots[i].intersects(b)) continue;
    if (hit != roots.size()) return roots.size();
    hit = i;
  }
  return hit;
}

namespace {

struct Cf {
  mpf_class re, im;
  explicit Cf(unsigned prec) : re(0, prec), im(0, prec) {}
};

void set_mul(Cf& out, const Cf& a, const Cf& b, unsigned prec) {
  mpf_class r(a.re * b.re - a.im * b.im, prec);
  mpf_class i(a.re * b.im + a.im * b.re, prec);
  out.re = r;
  out.im = i;
}

void set_div(Cf& out, const Cf& a, const Cf& b, unsigned prec) {
  mpf_class d(b.re * b.re + b.im * b.im, prec);
  mpf_class r((a.re * b.re + a.im * b.im) / d, prec);
  mpf_class i((a.im * b.re - a.re * b.im) / d, prec);
  out.re = r;
  out.im = i;
}

// p(z) and p'(z) by Horner
void horner(const std::vector<mpf_class>& c, const Cf& z, Cf& val, Cf& der, unsigned prec) {
  val = Cf(prec);
  der = Cf(prec);
  Cf t(prec);
  for (std::size_t k = c.size(); k-- > 0;) {
    set_mul(t, der, z, prec);
    der.re = t.re + val.re;
    der.im = t.im + val.im;
    set_mul(t, val, z, prec);
    val.re = t.re + c[k];
    val.im = t.im;
  }
}

void aberth(const IntPolynomial& p, std::vector<Cf>& z, unsigned prec) {
  const std::size_t n = z.size();
  std::vector<mpf_class> c;
  for (const auto& a : p.coefficients()) c.emplace_back(a, prec);
  const mpf_class tol_scale(mpf_class(1, prec) >> (prec - 12), prec);
  const int max_iter = 200 + 20 * static_cast<int>(n);
  Cf val(prec), der(prec), ratio(prec), sum(prec), t(prec), w(prec), one(prec);
  one.re = 1;
  for (int it = 0; it < max_iter; ++it) {
    bool converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      horner(c, z[i], val, der, prec);
      if (val.re == 0 && val.im == 0) continue;
      set_div(ratio, val, der, prec);
      sum = Cf(prec);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Cf d(prec);
        d.re = z[i].re - z[j].re;
        d.im = z[i].im - z[j].im;
        set_div(t, one, d, prec);
        sum.re += t.re;
        sum.im += t.im;
      }
      set_mul(t, ratio, sum, prec);
      Cf denom(prec);
      denom.re = 1 - t.re;
      denom.im = -t.im;
      set_div(w, ratio, denom, prec);
      z[i].re -= w.re;
      z[i].im -= w.im;
      mpf_class mag(abs(z[i].re) + abs(z[i].im) + 1, prec);
      mpf_class step(abs(w.re) + abs(w.im), prec);
      if (step > mag * tol_scale) converged = false;
    }
    if (converged) return;
  }
}

Rational to_rational(const mpf_class& x) { return Rational(x); }

// rational upper bound for sqrt(v), v >= 0
Rational sqrt_upper(const Rational& v, unsigned prec) {
  if (v == 0) return 0;
  mpf_class f(v, prec + 32);
  f = sqrt(f);
  Rational r(f);
  r += r / (Int(1) << 40) + Rational(1, Int(1) << (prec + 16));
  while (r * r < v) r *= 2;
  return r;
}

bool certify(const IntPolynomial& p, const std::vector<Cf>& z, unsigned prec, ComplexEmbeddingSet& out) {
  const std::size_t n = z.size();
  std::vector<ComplexBall> centers(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational dr, di;
    centers[i].re = snap(to_rational(z[i].re), prec, dr);
    centers[i].im = snap(to_rational(z[i].im), prec, di);
  }
  const Rational lc2 = Rational(p.leading() * p.leading());
  std::vector<ComplexBall> disks(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexBall v = evaluate(p, centers[i]);
    Rational num = v.re * v.re + v.im * v.im;
    Rational den = lc2;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Rational dr = centers[i].re - centers[j].re, di = centers[i].im - centers[j].im;
      Rational d2 = dr * dr + di * di;
      if (d2 == 0) return false;
      den *= d2;
    }
    const Rational w2 = num / den * static_cast<long>(n * n);
    disks[i] = centers[i];
    disks[i].rad = sqrt_upper(w2, prec);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (disks[i].intersects(disks[j])) return false;
  std::vector<std::size_t> conj(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t hit = n;
    const ComplexBall mirror = disks[i].conj();
    for (std::size_t j = 0; j < n; ++j) {
      if (!mirror.intersects(disks[j])) continue;
      if (hit != n) return false;
      hit = j;
    }
    if (hit == n) return false;
    conj[i] = hit;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (conj[conj[i]] != i) return false;

  // canonical order
  std::vector<std::size_t> upper, real;
  for (std::size_t i = 0; i < n; ++i) {
    if (conj[i] == i)
      real.push_back(i);
    else if (disks[i].im > 0)
      upper.push_back(i);
  }
  auto real_part_order = [&](std::size_t a, std::size_t b) {
    const ComplexBall &x = disks[a], &y = disks[b];
    if (abs(x.re - y.re) > x.rad + y.rad) return x.re > y.re;
    return x.im < y.im;
  };
  std::sort(upper.begin(), upper.end(), real_part_order);
  std::sort(real.begin(), real.end(), [&](std::size_t a, std::size_t b) { return disks[a].re < disks[b].re; });
  std::vector<std::size_t> order = upper;
  for (auto i : upper) order.push_back(conj[i]);
  order.insert(order.end(), real.begin(), real.end());
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  out.poly = p;
  out.roots.clear();
  out.conjugate.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    out.roots.push_back(disks[order[k]]);
    out.conjugate[k] = position[conj[order[k]]];
  }
  out.nonreal_pairs = upper.size();
  out.precision_bits = prec;
  return true;
}

} // namespace

ComplexEmbeddingSet certified_roots(const IntPolynomial& p, unsigned precision_bits, unsigned max_bits) {
  require(p.degree() >= 1, "certified_roots: polynomial must have positive degree");
  require(is_squarefree(p), "certified_roots: polynomial is not squarefree");
  const std::size_t n = static_cast<std::size_t>(p.degree());
  unsigned prec = std::max(precision_bits, 64u);

  // start on a circle whose radius is the geometric mean of the root moduli
  const long a0_bits = p.coeff(0) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(p.coeff(0).get_mpz_t(), 2));
  const long an_bits = static_cast<long>(mpz_sizeinbase(p.leading().get_mpz_t(), 2));
  const double log_radius = p.coeff(0) == 0 ? 0.0 : static_cast<double>(a0_bits - an_bits) / static_cast<double>(n);
  std::vector<Cf> z;
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.7 / static_cast<double>(n);
    Cf c(prec);
    mpf_class radius(1, prec);
    if (log_radius >= 0)
      mpf_mul_2exp(radius.get_mpf_t(), radius.get_mpf_t(), static_cast<unsigned long>(std::lround(log_radius)));
    else
      mpf_div_2exp(radius.get_mpf_t(), radius.get_mpf_t(), static_cast<unsigned long>(std::lround(-log_radius)));
    c.re = radius * std::cos(angle);
    c.im = radius * std::sin(angle);
    z.push_back(c);
  }
  ComplexEmbeddingSet out;
  while (prec <= max_bits) {
    for (auto& c : z) {
      c.re.set_prec(prec);
      c.im.set_prec(prec);
    }
    aberth(p, z, prec);
    if (certify(p, z, prec, out)) return out;
    prec *= 2;
  }
  fail(ErrorKind::PrecisionExhausted,
       "precision exhausted: roots of " + p.to_string() + " not separated at " + std::to_string(max_bits) + " bits");
}

namespace {

std::vector<RatPolynomial> sturm_chain(const IntPolynomial& p) {
  std::vector<RatPolynomial> chain{RatPolynomial(p), RatPolynomial(p.derivative())};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(RatPolynomial() - r);
  }
  return chain;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int changes_at(const std::vector<RatPolynomial>& chain, const Rational& x) {
  std::vector<int> s;
  for (const auto& q : chain) {
    Rational v = 0;
    for (int i = q.degree(); i >= 0; --i) v = v * x + q.coeff(static_cast<std::size_t>(i));
    s.push_back(sgn(v));
  }
  return sign_changes(s);
}

int changes_at_infinity(const std::vector<RatPolynomial>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int sign = sgn(q.leading());
    if (!positive && q.degree() % 2 == 1) sign = -sign;
    s.push_back(sign);
  }
  return sign_changes(s);
}

} // namespace

ComplexEmbeddingSet refine(const ComplexEmbeddingSet& set, unsigned precision_bits) {
  if (precision_bits <= set.precision_bits) return set;
  const ComplexEmbeddingSet fresh = certified_roots(set.poly, precision_bits);
  const std::size_t n = set.roots.size();
  std::vector<std::size_t> where(n, n); // fresh index -> old index
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t old = set.locate(fresh.roots[i]);
    if (old == n) fail(ErrorKind::PrecisionExhausted, "refine: cannot match refined root disks");
    where[i] = old;
  }
  ComplexEmbeddingSet out = set;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[where[i]]) fail(ErrorKind::PrecisionExhausted, "refine: cannot match refined root disks");
    seen[where[i]] = true;
    out.roots[where[i]] = fresh.roots[i];
  }
  out.precision_bits = fresh.precision_bits;
  return out;
}

int count_real_roots(const IntPolynomial& p, const Rational& a, const Rational& b) {
  require(!p.is_zero(), "count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(p);
  return changes_at(chain, a) - changes_at(chain, b);
}

int count_real_roots(const IntPolynomial& p) {
  require(!p.is_zero(), "count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(p);
  return changes_at_infinity(chain, false) - changes_at_infinity(chain, true);
}

int count_real_roots_above(const IntPolynomial& p, const Rational& a) {
  require(!p.is_zero(), "count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(p);
  return changes_at(chain, a) - changes_at_infinity(chain, true);
}

} // namespace avforge
