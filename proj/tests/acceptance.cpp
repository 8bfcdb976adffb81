// Acceptance gate: one PASS/FAIL line per criterion, with the measured time
// against its limit. Oracles here are independent of the code under test.

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/forge.hpp"
#include "avforge/pairing.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

using namespace avforge;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

// every report and certificate seen by the run feeds the invariant suites
struct Collected {
  std::vector<HondaTateReport> reports;
  std::vector<ConstructionCertificate> certificates;
  void add(const ConstructionCertificate& c) {
    reports.push_back(c.honda_tate);
    certificates.push_back(c);
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (s >= limit_s) o.require(false, "over the time limit");
  if (!o.pass) ++failures;
  std::printf("criterion %d [%s] %s: %.3f s (limit %.0f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", name, s, limit_s,
              o.detail.empty() ? "" : "; ", o.detail.c_str());
  std::fflush(stdout);
}

std::uint64_t brute_order(std::uint64_t a, std::uint64_t l) {
  std::uint64_t x = a % l;
  for (std::uint64_t d = 1; d < l; ++d) {
    if (x == 1) return d;
    x = x * (a % l) % l;
  }
  return 0;
}

std::uint64_t pow_small(std::uint64_t a, std::uint64_t e, std::uint64_t l) {
  std::uint64_t r = 1;
  a %= l;
  for (; e; e >>= 1, a = a * a % l)
    if (e & 1) r = r * a % l;
  return r;
}

std::vector<std::uint64_t> brute_roots(const IntPolynomial& p, std::uint64_t l) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < l; ++x)
    if (p.eval(from_u64(x)) % from_u64(l) == 0) out.push_back(x);
  return out;
}

bool small_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned phi_small(unsigned n) {
  unsigned c = 0;
  for (unsigned i = 1; i <= n; ++i) c += std::gcd(i, n) == 1;
  return c;
}

// Phi_n(s) as prod over d | n of (s^d - 1)^mu(n/d), by direct evaluation
Int cyclotomic_value(unsigned n, const Int& s) {
  auto mu = [](unsigned m) {
    int r = 1;
    for (unsigned p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        r = -r;
      }
    return m > 1 ? -r : r;
  };
  Rational v = 1;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    Int sd = 1;
    for (unsigned i = 0; i < d; ++i) sd *= s;
    const int m = mu(n / d);
    if (m == 1) v *= Rational(sd - 1);
    if (m == -1) v /= Rational(sd - 1);
  }
  return v.get_num();
}

// Gaussian integers for the type IV oracle
struct Gauss {
  Int re, im;
};
Gauss operator*(const Gauss& a, const Gauss& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
bool divides(const Gauss& d, const Gauss& x, Gauss& quotient) {
  const Int n = d.re * d.re + d.im * d.im;
  const Gauss num = x * Gauss{d.re, -d.im};
  if (num.re % n != 0 || num.im % n != 0) return false;
  quotient = {num.re / n, num.im / n};
  return true;
}
unsigned valuation(const Gauss& prime, Gauss x) {
  unsigned v = 0;
  Gauss q;
  while (divides(prime, x, q)) {
    x = q;
    ++v;
  }
  return v;
}

bool tamper_detected(const Json& doc) {
  const Json flat = doc.flatten();
  for (const auto& [ptr, value] : flat.items()) {
    Json t = doc;
    Json changed;
    if (value.is_boolean()) changed = !value.get<bool>();
    else if (value.is_null()) changed = 0;
    else if (value.is_number()) changed = value.get<std::uint64_t>() + 1;
    else if (value.is_string()) changed = value.get<std::string>() + "0";
    else changed = Json::array({1});
    t[Json::json_pointer(ptr)] = changed;
    if (verify_certificate(t).empty()) return false;
  }
  return true;
}

} // namespace

int main() {
  Collected seen;

  criterion(1, "supersingular reproduction s=3, N=4", 1, [&] {
    Outcome o;
    const auto c = construct_supersingular(3, 4);
    seen.add(c);
    const Int phi8 = cyclotomic_value(8, 3);
    o.require(phi8 == 82, "Phi_8(3) oracle");
    o.require(c.weil.min_poly == IntPolynomial{81, 0, 0, 0, 1}, "P is not X^4 + 81");
    o.require(group_order(c.weil) == phi8, "group order is not 82");
    o.require(c.embedding && c.embedding->l == 41, "l is not 41");
    o.require(c.embedding && c.embedding->embedding_degree == 4 && brute_order(9, 41) == 4, "embedding degree is not 4");
    o.require(verify_certificate(to_json(c)).empty(), "certificate does not verify");
    o.detail = o.pass ? "P = X^4 + 81, order 82, l = 41, k = 4" : o.detail;
    return o;
  });

  criterion(2, "supersingular bound sweep", 30, [&] {
    Outcome o;
    unsigned emitted = 0, skipped = 0;
    // Phi_16(9) = 2 * 21523361 needs l beyond the default l_max
    RunConfig cfg;
    cfg.l_max = 1'000'000'000;
    for (unsigned s : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
      for (unsigned n = 1; n <= 8; ++n) {
        if (s == 2 && n == 3) continue;
        const std::string tag = "s=" + std::to_string(s) + " N=" + std::to_string(n);
        ConstructionCertificate c;
        try {
          c = construct_supersingular(s, n, cfg);
        } catch (const Error& e) {
          // acceptable only when no prime of Phi_2N(s) lies outside 2N
          bool admissible = false;
          for (const Int& l : arith::factor(cyclotomic_value(2 * n, s)).primes()) admissible |= (2 * n) % to_u64(l) != 0;
          o.require(!admissible && e.kind() == ErrorKind::Domain, tag + ": unexpected error " + e.what());
          ++skipped;
          continue;
        }
        ++emitted;
        seen.add(c);
        // N = 1 is the elliptic case: g = 1, not phi(2)/2 = 0
        const unsigned g = std::max(1u, phi_small(2 * n) / 2);
        o.require(c.embedding && c.embedding->embedding_degree <= 4 * g * g, tag + ": embedding degree above 4g^2");
        o.require(c.embedding && brute_order(static_cast<std::uint64_t>(s) * s % c.embedding->l, c.embedding->l) == n,
                  tag + ": embedding degree is not N");
        o.require(verify_certificate(to_json(c)).empty(), tag + ": certificate does not verify");
      }
    }
    if (o.pass) o.detail = std::to_string(emitted) + " certificates, " + std::to_string(skipped) + " pairs without admissible l";
    return o;
  });

  criterion(3, "Koblitz property on 200 elliptic Weil pairs", 60, [&] {
    Outcome o;
    std::vector<std::pair<std::uint64_t, long>> pool;
    for (std::uint64_t p = 2; p <= 200; ++p) {
      if (!small_prime(p)) continue;
      for (long a = -static_cast<long>(2 * std::sqrt(p)) - 1; a * a < 4 * static_cast<long>(p) || a < 0; ++a)
        if (a * a < 4 * static_cast<long>(p) && std::gcd(std::abs(a), static_cast<long>(p)) == 1) pool.push_back({p, a});
    }
    std::mt19937_64 rng(20240601);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(200);
    unsigned checked = 0;
    for (const auto& [p, a] : pool) {
      const IntPolynomial poly({from_u64(p), Int(-a), Int(1)});
      const WeilNumber w = validate_weil(poly, from_u64(p), 1);
      seen.reports.push_back(honda_tate(w));
      const Int value = poly.eval(Int(1));
      const Int disc = Int(a * a) - 4 * from_u64(p);
      for (const Int& li : arith::factor(value).primes()) {
        const std::uint64_t l = to_u64(li);
        if (from_u64(p) * (from_u64(p) - 1) % li == 0 || disc % li == 0) continue;
        ++checked;
        o.require(full_embedding_degree(w, l) == embedding_degree(w, l),
                  "exception at p=" + std::to_string(p) + " a=" + std::to_string(a) + " l=" + std::to_string(l));
        o.require(full_embedding_degree(w, l) == brute_order(p, l), "oracle: order of p mod l differs");
      }
    }
    if (o.pass) o.detail = std::to_string(checked) + " (w, l) pairs, zero exceptions";
    return o;
  });

  criterion(4, "type IV worked instance (5, 2, 3)", 1, [&] {
    Outcome o;
    const auto c = construct_typeiv(5, 2, 3);
    seen.add(c);
    // pi = 1 + 2i, pi~ = pi^2 conj(pi)
    const Gauss pi{1, 2}, pi_bar{1, -2};
    const Gauss t = pi * pi * pi_bar;
    o.require(t.re == 5 && t.im == 10, "oracle: pi~ is not 5 + 10i");
    const Int trace = 2 * t.re, norm = t.re * t.re + t.im * t.im;
    o.require(c.weil.min_poly == IntPolynomial({norm, -trace, Int(1)}), "min poly is not X^2 - 10X + 125");
    o.require(c.construction["pi_tilde"] == Json::array({"0", "5"}), "pi_tilde is not 5(1 + 2i)");
    o.require(c.honda_tate.dim == 3, "dimension is not 3");
    // slopes v(pi~)/v(q) at the primes 1 + 2i and 1 - 2i
    const Rational s1(valuation(pi, t), 3), s2(valuation(pi_bar, t), 3);
    std::vector<Rational> inv, oracle{std::min(s1, s2), std::max(s1, s2)};
    for (const auto& h : c.honda_tate.hasse_invariants) inv.push_back(h.invariant);
    std::sort(inv.begin(), inv.end());
    o.require(oracle == std::vector<Rational>{Rational(1, 3), Rational(2, 3)}, "oracle valuations");
    o.require(inv == oracle, "Hasse invariants are not {1/3, 2/3}");
    const auto& sl = c.honda_tate.polygon.slopes;
    o.require(sl.size() == 2 && sl[0] == Slope{Rational(1, 3), 3} && sl[1] == Slope{Rational(2, 3), 3},
              "Newton polygon is not 3 x 1/3, 3 x 2/3");
    o.require(verify_certificate(to_json(c)).empty(), "certificate does not verify");
    if (o.pass) o.detail = "pi~ = 5 + 10i, X^2 - 10X + 125, dim 3, {1/3, 2/3}";
    return o;
  });

  criterion(5, "anti-Koblitz separation over q = 3, (m, n) = (2, 2)", 60, [&] {
    Outcome o;
    // derive the input: first ordinary quartic 3-Weil polynomial X^4 + aX^3 + bX^2 + 3aX + 9
    // (small |a|, then |b|) whose base change succeeds
    std::optional<ConstructionCertificate> found;
    for (long h = 1; h <= 6 && !found; ++h) {
      for (long a = -h; a <= h && !found; ++a) {
        for (long b = -h; b <= h && !found; ++b) {
          if (std::max(std::abs(a), std::abs(b)) != h || b % 3 == 0) continue;
          WeilNumber w;
          try {
            w = validate_weil(IntPolynomial({Int(9), Int(3 * a), Int(b), Int(a), Int(1)}), 3, 1);
          } catch (const Error&) {
            continue;
          }
          if (w.degree() != 4) continue;
          try {
            found = construct_base_change(w, 2, 2);
          } catch (const Error&) {
          }
        }
      }
    }
    o.require(found.has_value(), "no derived quartic admits the construction");
    if (!found) return o;
    const auto& c = *found;
    seen.add(c);
    const std::uint64_t l = c.embedding->l;
    o.require(l < 100000, "l is not below 10^5");
    o.require(c.embedding->embedding_degree == 2, "embedding degree is not 2");
    o.require(c.embedding->full_embedding_degree == 4, "full embedding degree is not 4");
    o.require(full_embedding_degree_by_matrix(c.weil.min_poly, l, c.exponent) == 4, "companion-matrix order is not 4");
    // brute force on roots mod l: orders of r^e with e = (l-1)/4 include 1, 2 and 4
    const std::uint64_t e = (l - 1) / 4;
    std::vector<std::uint64_t> ords;
    for (auto r : brute_roots(c.weil.min_poly, l)) ords.push_back(brute_order(pow_small(r, e, l), l));
    std::sort(ords.begin(), ords.end());
    o.require(ords.size() == 4 && std::binary_search(ords.begin(), ords.end(), 1) &&
                  std::binary_search(ords.begin(), ords.end(), 2) && ords.back() == 4,
              "oracle: root orders do not separate 2 from 4");
    o.require(verify_certificate(to_json(c)).empty(), "certificate does not verify");
    if (o.pass) o.detail = "P = " + c.weil.min_poly.to_string() + ", l = " + std::to_string(l) + ", degrees 2 and 4";
    return o;
  });

  criterion(6, "ordinary CM on Q(zeta_5), N = 3", 300, [&] {
    Outcome o;
    const auto c = construct_ordinary_cm(make_cm_type(IntPolynomial{1, 1, 1, 1, 1}, {0, 1}), 3);
    seen.add(c);
    o.require(c.honda_tate.classification == Classification::Ordinary, "pi is not ordinary");
    o.require(c.weil.degree() == 4, "Q(pi) is not of degree 4");
    o.require(c.weil.k == 1, "not over a prime field");
    // pi conj(pi) = p: the constant term of P is p^2 and its roots lie on |z| = sqrt(p), checked in validate_weil
    o.require(c.weil.min_poly.coeff(0) == c.weil.p * c.weil.p, "constant term is not p^2");
    o.require(c.embedding && c.embedding->embedding_degree == 3, "embedding degree is not 3");
    if (c.embedding) {
      const std::uint64_t l = c.embedding->l;
      o.require(brute_order(pow_small(to_u64(c.weil.p) % l, to_u64(c.exponent % from_u64(l - 1)), l), l) == 3,
                "oracle: order of q~ mod l is not 3");
    }
    o.require(verify_certificate(to_json(c)).empty(), "certificate does not verify");
    if (o.pass) o.detail = "p = " + c.weil.p.get_str() + ", l = " + std::to_string(c.embedding->l);
    return o;
  });

  criterion(7, "invariant suites", 300, [&] {
    Outcome o;
    // more type IV certificates for (c)
    for (unsigned d : {3u, 4u, 5u})
      for (auto [p, a] : std::vector<std::pair<int, int>>{{5, 2}, {7, 3}, {11, -4}, {13, 5}})
        seen.add(construct_typeiv(p, a, d));
    for (const auto& r : seen.reports) {
      o.require(r.polygon.symmetric() && r.polygon.integral_breakpoints(), "(a) polygon not symmetric or breakpoints not integral");
      o.require(2 * r.dim == r.center_degree * r.index, "(b) 2 dim != [Q(pi):Q] m_pi");
    }
    unsigned typeiv = 0;
    for (const auto& c : seen.certificates) {
      if (c.kind != ConstructionKind::TypeIV) continue;
      ++typeiv;
      o.require(c.weil.k % c.honda_tate.typeiv_d == 0, "(c) d does not divide k");
    }
    // (d) routes on random (w, l)
    std::mt19937_64 rng(777);
    unsigned agreed = 0;
    while (agreed < 500) {
      const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13}[rng() % 6];
      const unsigned k = 1 + rng() % 2;
      const Int q = k == 1 ? from_u64(p) : from_u64(p * p);
      IntPolynomial poly;
      if (rng() % 2) {
        const long bound = static_cast<long>(2 * std::sqrt(to_u64(q)));
        poly = IntPolynomial({q, Int(static_cast<long>(rng() % (2 * bound + 1)) - bound), Int(1)});
      } else {
        const long a = static_cast<long>(rng() % 9) - 4, b = static_cast<long>(rng() % 17) - 8;
        poly = IntPolynomial({q * q, Int(a) * q, Int(b), Int(a), Int(1)});
      }
      WeilNumber w;
      try {
        w = validate_weil(poly, from_u64(p), k);
      } catch (const Error&) {
        continue;
      }
      const std::uint64_t l = arith::next_prime(3 + rng() % 3000);
      if (q % from_u64(l) == 0 || discriminant(poly) % from_u64(l) == 0) continue;
      const Int a = full_embedding_degree_by_factors(poly, l), b = full_embedding_degree_by_matrix(poly, l);
      o.require(a == b, "(d) routes disagree on " + poly.to_string() + " at l = " + std::to_string(l));
      ++agreed;
    }
    // (e) tamper detection on every certificate kind
    unsigned tampered = 0;
    for (const auto& c : seen.certificates) {
      if (tampered > 0 && c.kind == ConstructionKind::Supersingular) continue;
      o.require(tamper_detected(to_json(c)), std::string("(e) an undetected tamper in a ") + to_string(c.kind) + " certificate");
      ++tampered;
    }
    if (o.pass)
      o.detail = std::to_string(seen.reports.size()) + " reports, " + std::to_string(typeiv) + " type IV certificates, " +
                 std::to_string(agreed) + " route pairs, " + std::to_string(tampered) + " certificates tampered";
    return o;
  });

  std::printf("%s: %d criterion failure(s)\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
