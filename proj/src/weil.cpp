#include "avforge/weil.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/matrix.hpp"
#include "avforge/number_field.hpp"
#include "avforge/prime_field.hpp"
#include "avforge/roots.hpp"
#include "avforge/zfactor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace avforge {

std::string to_string(Classification c, unsigned typeiv_d) {
  switch (c) {
  case Classification::Ordinary: return "Ordinary";
  case Classification::Supersingular: return "Supersingular";
  case Classification::TypeIV: return "TypeIV(1," + std::to_string(typeiv_d) + ")";
  case Classification::Other: return "Other";
  }
  return "Other";
}

const char* to_string(Tristate t) {
  switch (t) {
  case Tristate::Yes: return "yes";
  case Tristate::No: return "no";
  case Tristate::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

long valuation(const Int& a, const Int& p) {
  Int r;
  return static_cast<long>(mpz_remove(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

bool is_real_family(const IntPolynomial& poly, const Int& q) {
  if (poly.degree() == 1) return true;
  return poly.degree() == 2 && poly.coeff(1) == 0 && poly.coeff(0) == -q;
}

Rational frac_part(const Rational& x) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

struct Segment {
  long x0, x1, y0, y1;
};

// Lower convex hull of (i, v_p(a_{n-i})), maximal segments.
std::vector<Segment> lower_hull(const IntPolynomial& poly, const Int& p) {
  const long n = poly.degree();
  std::vector<std::pair<long, long>> pts;
  for (long i = 0; i <= n; ++i) {
    const Int& a = poly.coeff(static_cast<std::size_t>(n - i));
    if (a != 0) pts.emplace_back(i, valuation(a, p));
  }
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b when it lies on or above segment a -> pt
      const long cross = (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i)
    segs.push_back({hull[i].first, hull[i + 1].first, hull[i].second, hull[i + 1].second});
  return segs;
}

std::string place_name(const Int& p, const std::string& detail) { return "p=" + p.get_str() + " " + detail; }

} // namespace

bool WeilNumber::is_real() const { return is_real_family(min_poly, q()); }

unsigned NewtonPolygon::total() const {
  unsigned t = 0;
  for (const auto& s : slopes) t += s.multiplicity;
  return t;
}

bool NewtonPolygon::symmetric() const {
  for (const auto& s : slopes) {
    const Rational mirror = 1 - s.slope;
    auto it = std::find_if(slopes.begin(), slopes.end(), [&](const Slope& o) { return o.slope == mirror; });
    if (it == slopes.end() || it->multiplicity != s.multiplicity) return false;
  }
  return true;
}

bool NewtonPolygon::integral_breakpoints() const {
  Rational y = 0;
  for (const auto& s : slopes) {
    y += s.slope * s.multiplicity;
    if (y.get_den() != 1) return false;
  }
  return true;
}

bool NewtonPolygon::all_equal(const Rational& s) const {
  return std::all_of(slopes.begin(), slopes.end(), [&](const Slope& x) { return x.slope == s; });
}

NewtonPolygon newton_polygon_of(const IntPolynomial& poly, const Int& p, unsigned k) {
  NewtonPolygon np;
  for (const auto& seg : lower_hull(poly, p)) {
    Rational s(seg.y1 - seg.y0, (seg.x1 - seg.x0) * static_cast<long>(k));
    s.canonicalize();
    const unsigned len = static_cast<unsigned>(seg.x1 - seg.x0);
    if (!np.slopes.empty() && np.slopes.back().slope == s)
      np.slopes.back().multiplicity += len;
    else
      np.slopes.push_back({s, len});
  }
  return np;
}

NewtonPolygon newton_polygon(const WeilNumber& w) {
  NewtonPolygon np = newton_polygon_of(w.min_poly, w.p, w.k);
  for (auto& s : np.slopes) s.multiplicity *= w.m_pi;
  return np;
}

std::vector<LocalInvariant> supersingular_invariants(const IntPolynomial& poly, const Int& p, unsigned k) {
  const Int q = pow_int(p, k);
  require(!is_real_family(poly, q), "supersingular_invariants: real Weil numbers carry real places");
  require(poly.is_monic(), "supersingular_invariants: polynomial must be monic");
  // pi^2 / q is a primitive M-th root of unity: least M with C^{2M} = q^M
  const IntMatrix c = IntMatrix::companion(poly);
  const IntMatrix c2 = c * c;
  IntMatrix power = c2;
  const unsigned n = static_cast<unsigned>(poly.degree());
  std::uint64_t m = 0;
  for (unsigned i = 1; i <= 2 * n * n + 6; ++i) {
    if (i > 1) power = power * c2;
    auto v = power.scalar_value();
    if (v && *v == pow_int(q, i)) {
      m = i;
      break;
    }
  }
  require(m > 0, "supersingular_invariants: pi^2/q is not a root of unity");
  // local degree of Q_p(pi) is odd only if Q_p(zeta_M) is unramified of odd degree f and
  // q zeta_M is already a square there, which needs k even and zeta_M a square
  require(fits_word(p), "supersingular_invariants: p must fit a machine word");
  const std::uint64_t pw = to_u64(p);
  bool odd_degree = false;
  std::uint64_t f = 0;
  if (k % 2 == 0 && m % pw != 0) {
    f = arith::multiplicative_order(p, from_u64(m)).get_ui();
    const bool zeta_square = m % 2 == 1 || arith::mod(pow_int(p, static_cast<unsigned long>(f)) - 1, from_u64(2 * m)) == 0;
    odd_degree = f % 2 == 1 && zeta_square;
  }
  std::vector<LocalInvariant> out;
  const Rational half(1, 2);
  if (odd_degree) {
    for (unsigned i = 0; i < n / f; ++i)
      out.push_back({place_name(p, "supersingular place " + std::to_string(i + 1)), static_cast<unsigned>(f), half, half});
  } else {
    out.push_back({place_name(p, "supersingular (aggregate, even local degrees)"), n, half, 0});
  }
  return out;
}

std::optional<std::vector<LocalInvariant>> local_invariants(const IntPolynomial& poly, const Int& p, unsigned k,
                                                            std::string* reason) {
  const Int q = pow_int(p, k);
  std::vector<LocalInvariant> out;
  const auto segs = lower_hull(poly, p);
  const Rational half(1, 2);

  if (poly.degree() == 2 && segs.size() == 1) {
    // one slope 1/2: decomposition of p in the quadratic field via the Kronecker symbol
    Int d = poly.coeff(1) * poly.coeff(1) - 4 * poly.coeff(0);
    const Int p2 = p * p;
    while (d != 0 && mpz_divisible_p(d.get_mpz_t(), p2.get_mpz_t())) d /= p2;
    enum { Split, Inert, Ramified } kind;
    if (p == 2) {
      const unsigned long r = mpz_fdiv_ui(d.get_mpz_t(), 8);
      kind = (r % 2 == 0 || r % 4 == 3) ? Ramified : (r == 1 ? Split : Inert);
    } else if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) {
      kind = Ramified;
    } else {
      kind = mpz_legendre(d.get_mpz_t(), p.get_mpz_t()) == 1 ? Split : Inert;
    }
    if (kind == Split) {
      out.push_back({place_name(p, "split (1)"), 1, half, half});
      out.push_back({place_name(p, "split (2)"), 1, half, half});
    } else {
      out.push_back({place_name(p, kind == Inert ? "inert" : "ramified"), 2, half, 0});
    }
  } else {
    require(fits_word(p), "local invariants: p must fit a machine word");
    const std::uint64_t pw = to_u64(p);
    const long n = poly.degree();
    int side = 0;
    for (const auto& seg : segs) {
      ++side;
      const long dx = seg.x1 - seg.x0, dy = seg.y1 - seg.y0;
      const long g = std::gcd(dx, dy);
      const long e = dx / g, h = dy / g, t = g;
      Rational slope(h, e * static_cast<long>(k));
      slope.canonicalize();
      const Rational lattice_slope_times_e = Rational(h, static_cast<long>(k));
      if (lattice_slope_times_e.get_den() == 1) {
        // every place on this side has integral invariant
        out.push_back({place_name(p, "side " + std::to_string(side) + " (aggregate)"), static_cast<unsigned>(dx), slope, 0});
        continue;
      }
      std::vector<std::uint64_t> residual(static_cast<std::size_t>(t + 1), 0);
      for (long j = 0; j <= t; ++j) {
        const long x = seg.x0 + j * e;
        const Int& a = poly.coeff(static_cast<std::size_t>(n - x));
        const long y = seg.y0 + j * h;
        if (a == 0 || valuation(a, p) != y) continue;
        Int unit = a / pow_int(p, static_cast<unsigned long>(y));
        residual[static_cast<std::size_t>(j)] = to_u64(arith::mod(unit, p));
      }
      PrimeFieldPoly r(pw, residual);
      auto fac = factor_mod(r);
      if (!fac.squarefree()) {
        if (segs.size() == 1 && slope == half && !is_real_family(poly, q)) return supersingular_invariants(poly, p, k);
        if (reason) *reason = "p ramified or divides index — invariants unavailable";
        return std::nullopt;
      }
      int idx = 0;
      for (const auto& f : fac.factors) {
        const unsigned fdeg = static_cast<unsigned>(f.factor.degree());
        const unsigned ld = static_cast<unsigned>(e) * fdeg;
        out.push_back({place_name(p, "side " + std::to_string(side) + " factor " + std::to_string(++idx) + " (e=" +
                                         std::to_string(e) + ", f=" + std::to_string(fdeg) + ")"),
                       ld, slope, frac_part(slope * ld)});
      }
    }
  }
  if (is_real_family(poly, q))
    for (int i = 0; i < poly.degree(); ++i) out.push_back({"real (" + std::to_string(i + 1) + ")", 1, 0, half});

  Rational total = 0;
  for (const auto& inv : out) total += inv.invariant;
  require(total.get_den() == 1, "local invariants do not sum to zero in Q/Z");
  return out;
}

namespace {

unsigned index_of(const std::vector<LocalInvariant>& invs) {
  Int m = 1;
  for (const auto& inv : invs) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), inv.invariant.get_den_mpz_t());
  return static_cast<unsigned>(m.get_ui());
}

// h(Y) with P(X) = X^g h(X + q/X) for a q-symmetric P of degree 2g.
IntPolynomial trace_polynomial(const IntPolynomial& poly, const Int& q) {
  const int g = poly.degree() / 2;
  IntPolynomial d_prev = IntPolynomial::constant(2), d_cur = IntPolynomial::x();
  IntPolynomial h = IntPolynomial::constant(poly.coeff(static_cast<std::size_t>(g)));
  for (int j = 1; j <= g; ++j) {
    h += d_cur * poly.coeff(static_cast<std::size_t>(g + j));
    IntPolynomial next = IntPolynomial::x() * d_cur - d_prev * q;
    d_prev = d_cur;
    d_cur = next;
  }
  return h;
}

} // namespace

WeilNumber validate_weil(const IntPolynomial& poly, const Int& p, unsigned k) {
  require(poly.degree() >= 1 && poly.is_monic(), "validate_weil: polynomial must be monic of positive degree");
  require(k >= 1, "validate_weil: k must be positive");
  require(p >= 2 && arith::is_prime(p), "validate_weil: p must be prime");
  const Int q = pow_int(p, k);
  const std::string off_circle = "root off the circle |z| = √q";
  if (!is_irreducible_over_Q(poly)) fail(ErrorKind::InvalidWeil, "not irreducible");

  if (poly.degree() == 1) {
    const Int r = -poly.coeff(0);
    if (r * r != q) fail(ErrorKind::InvalidWeil, off_circle);
  } else if (!is_real_family(poly, q)) {
    const int n = poly.degree();
    if (n % 2 == 1) fail(ErrorKind::InvalidWeil, "fails q-symmetry");
    const int g = n / 2;
    for (int j = 1; j <= g; ++j)
      if (poly.coeff(static_cast<std::size_t>(g - j)) != pow_int(q, static_cast<unsigned long>(j)) * poly.coeff(static_cast<std::size_t>(g + j)))
        fail(ErrorKind::InvalidWeil, "fails q-symmetry");
    // roots on |z| = sqrt(q)  <=>  h has g real roots y, all with y^2 < 4q
    const IntPolynomial h = trace_polynomial(poly, q);
    if (count_real_roots(h) != g) fail(ErrorKind::InvalidWeil, off_circle);
    std::vector<Int> even, odd;
    for (int i = 0; i <= h.degree(); ++i) (i % 2 == 0 ? even : odd).push_back(h.coeff(static_cast<std::size_t>(i)));
    const IntPolynomial e(even), o(odd);
    const IntPolynomial s = e * e - IntPolynomial::x() * o * o;
    const Int four_q = 4 * q;
    if (s.eval(four_q) == 0 || count_real_roots_above(s, Rational(four_q)) != 0) fail(ErrorKind::InvalidWeil, off_circle);
  }

  std::string reason;
  auto invs = local_invariants(poly, p, k, &reason);
  if (!invs) fail(ErrorKind::Unsupported, reason);
  return WeilNumber{poly, p, k, index_of(*invs)};
}

HondaTateReport honda_tate(const WeilNumber& w) {
  HondaTateReport r;
  std::string reason;
  auto invs = local_invariants(w.min_poly, w.p, w.k, &reason);
  if (!invs) fail(ErrorKind::Unsupported, reason);
  r.hasse_invariants = *invs;
  r.index = index_of(r.hasse_invariants);
  require(r.index == w.m_pi, "honda_tate: index disagrees with the WeilNumber");
  r.center_degree = w.degree();
  r.dim = w.dim();
  r.polygon = newton_polygon(w);
  const bool ordinary = std::all_of(r.polygon.slopes.begin(), r.polygon.slopes.end(),
                                    [](const Slope& s) { return s.slope == 0 || s.slope == 1; });
  if (r.polygon.all_equal(Rational(1, 2)))
    r.classification = Classification::Supersingular;
  else if (ordinary)
    r.classification = Classification::Ordinary;
  else if (w.degree() == 2 && !w.is_real() && r.index > 1) {
    r.classification = Classification::TypeIV;
    r.typeiv_d = r.index;
  }
  r.absolutely_simple = r.dim == 1 ? Tristate::Yes : is_absolutely_simple_by_slope(w);
  return r;
}

Tristate is_absolutely_simple_by_slope(const WeilNumber& w) {
  const unsigned g = w.dim();
  if (g < 3) return Tristate::Unknown;
  for (const auto& s : newton_polygon(w).slopes)
    if (s.slope.get_den() == g && s.slope > 0 && s.slope < 1) return Tristate::Yes;
  return Tristate::Unknown;
}

bool supersingular_test(const WeilNumber& w) { return newton_polygon(w).all_equal(Rational(1, 2)); }

namespace {

// Largest M worth scanning when phi(M) <= bound.
unsigned phi_scan_limit(unsigned bound) { return 2 * bound * bound + 6; }

} // namespace

bool absolutely_simple_by_powers(const WeilNumber& w) {
  const IntPolynomial& poly = w.min_poly;
  const NewtonPolygon np = newton_polygon(w);
  require(std::all_of(np.slopes.begin(), np.slopes.end(), [](const Slope& s) { return s.slope == 0 || s.slope == 1; }),
          "absolutely_simple_by_powers: w must be ordinary");
  const unsigned bound = 2 * w.degree() * w.degree();
  const IntMatrix c = IntMatrix::companion(poly);
  for (unsigned m = 2; m <= phi_scan_limit(bound); ++m) {
    if (arith::euler_phi_u64(m) > bound) continue;
    if (!is_irreducible_over_Q(c.pow(m).characteristic_polynomial())) return false;
  }
  return true;
}

std::optional<unsigned> rational_power_order(const WeilNumber& w) {
  const unsigned bound = 2 * w.degree();
  const IntMatrix c = IntMatrix::companion(w.min_poly);
  IntMatrix power = c;
  for (unsigned n = 1; n <= phi_scan_limit(bound); ++n) {
    if (n > 1) power = power * c;
    if (arith::euler_phi_u64(n) <= bound && power.scalar_value()) return n;
  }
  return std::nullopt;
}

TwistResult twist_test(const WeilNumber& w1, const WeilNumber& w2) {
  require(w1.q() == w2.q(), "twist_test: Weil numbers must share q");
  TwistResult r;
  r.phi_bound = 2 * w1.degree() * w2.degree();
  const IntMatrix c1 = IntMatrix::companion(w1.min_poly), c2 = IntMatrix::companion(w2.min_poly);
  for (unsigned m = 1; m <= phi_scan_limit(r.phi_bound); ++m) {
    if (arith::euler_phi_u64(m) > r.phi_bound) continue;
    const IntPolynomial a = c1.pow(m).characteristic_polynomial(), b = c2.pow(m).characteristic_polynomial();
    if (gcd(a, b).degree() > 0) {
      r.twist = true;
      r.order = m;
      return r;
    }
  }
  return r;
}

SupersingularDimension supersingular_dimension_check(const WeilNumber& w) {
  require(supersingular_test(w), "supersingular_dimension_check: w is not supersingular");
  const Int q = w.q();
  const IntMatrix c = IntMatrix::companion(w.min_poly);
  const IntMatrix c2 = c * c;
  IntMatrix power = c2;
  unsigned m = 0;
  const unsigned bound = 2 * w.degree();
  for (unsigned n = 1; n <= phi_scan_limit(bound); ++n) {
    if (n > 1) power = power * c2;
    auto s = power.scalar_value();
    if (s && *s == pow_int(q, n)) {
      m = n;
      break;
    }
  }
  require(m > 0, "supersingular_dimension_check: no root-of-unity order found");
  SupersingularDimension out;
  out.dim = w.dim();
  std::vector<unsigned> candidates;
  if (m % 2 == 0) {
    candidates = {2 * m};
  } else {
    Int s;
    bool own_sign = false;
    if (mpz_perfect_square_p(q.get_mpz_t())) {
      s = sqrt(q);
      auto v = c.pow(m).scalar_value();
      own_sign = v && *v == pow_int(s, m);
    }
    candidates = own_sign ? std::vector<unsigned>{m, 2 * m} : std::vector<unsigned>{2 * m, m};
  }
  out.order = candidates.front();
  for (unsigned n : candidates) {
    const std::uint64_t phi = arith::euler_phi_u64(n);
    if (out.dim == phi || (phi % 2 == 0 && out.dim == phi / 2)) {
      out.holds = true;
      out.order = n;
      break;
    }
  }
  return out;
}

IntPolynomial power_min_poly(const WeilNumber& w, const Int& e, std::size_t bit_bound) {
  auto pi = NumberFieldElement::generator(w.min_poly);
  return minimal_polynomial(power_element(pi, e, bit_bound));
}

} // namespace avforge
