// Certificate verification: every claim is re-derived from the document with
// the arithmetic, algebra, weil and pairing layers. Nothing here consults a
// search; minimality claims are re-checked by rescanning.

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/forge.hpp"
#include "avforge/number_field.hpp"
#include "avforge/prime_field.hpp"
#include "avforge/zfactor.hpp"
#include "cm_support.hpp"
#include "scan.hpp"

#include <algorithm>

namespace avforge {

namespace {

struct Checker {
  std::vector<std::string> failures;
  void check(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Context {
  Json doc;
  RunConfig config;
  ConstructionKind kind{};
  WeilNumber w;
  Int exponent;
  std::optional<EmbeddingCertificate> emb;
  std::uint64_t candidates = 0;
  const Json& inputs() const { return member(doc, "inputs"); }
  const Json& construction() const { return member(doc, "construction"); }
};

// Objects carry exactly the documented keys; extra fields are rejected.
bool keys_are(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object() || j.size() != keys.size()) return false;
  for (const char* k : keys)
    if (!j.contains(k)) return false;
  return true;
}

bool shape_ok(ConstructionKind kind, const Json& inputs, const Json& cons) {
  switch (kind) {
  case ConstructionKind::Supersingular:
    return keys_are(inputs, {"s", "N"}) && keys_are(cons, {"q", "cyclotomic_value", "phi_2N", "dimension", "dimension_check"});
  case ConstructionKind::TypeIV:
    return keys_are(inputs, {"p", "a", "d"}) && keys_are(cons, {"base_poly", "pi_tilde"});
  case ConstructionKind::TypeIVEmbedding:
    return keys_are(inputs, {"p", "a", "d", "N"}) && keys_are(cons, {"residues", "orders"});
  case ConstructionKind::BaseChange:
    return keys_are(inputs, {"weil", "m", "n", "attest_absolutely_simple"}) &&
           keys_are(cons, {"absolute_simplicity", "residues", "orders"});
  case ConstructionKind::OrdinaryCM:
    return keys_are(inputs, {"L_poly", "cm_type", "N"}) && keys_are(cons, {"reflex", "alpha", "alpha_norm", "pi", "kummer"});
  case ConstructionKind::OrdinaryCMFull:
    return keys_are(inputs, {"L_poly", "cm_type", "m", "n", "l"}) &&
           keys_are(cons, {"reflex", "alpha", "alpha_norm", "pi", "residues"});
  }
  return false;
}

unsigned small(const Json& j) { return static_cast<unsigned>(u64_from_json(j)); }

Json coords_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

std::vector<Rational> coords_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Domain, "malformed JSON: expected a coordinate array");
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

void verify_supersingular(const Context& c, Checker& ck) {
  const Int s = int_from_json(member(c.inputs(), "s"));
  const unsigned n = small(member(c.inputs(), "N"));
  ck.check(s >= 2 && n >= 1, "supersingular: inputs out of range");
  ck.check(!(s == 2 && n == 3), "supersingular: (q, N) = (4, 3) is excluded");
  const auto sf = arith::factor(s, c.config.factor_budget());
  ck.check(sf.factors.size() == 1 && sf.factors[0].prime == c.w.p && 2 * sf.factors[0].exponent == c.w.k,
           "supersingular: q is not s^2");
  ck.check(c.w.min_poly == scan::scaled_cyclotomic(2 * n, s), "supersingular: min_poly is not s^phi(2N) Phi_2N(X/s)");
  ck.check(c.exponent == 1, "supersingular: exponent must be 1");
  const Int value = arith::cyclotomic_poly(2 * n).eval(s);
  ck.check(int_from_json(member(c.construction(), "cyclotomic_value")) == value, "supersingular: Phi_2N(s) mismatch");
  ck.check(int_from_json(member(c.construction(), "q")) == s * s, "supersingular: q mismatch");
  std::uint64_t examined = 0;
  std::optional<Int> least;
  for (const Int& l : arith::factor(value, c.config.factor_budget()).primes()) {
    ++examined;
    if (fits_word(l) && (2 * std::uint64_t{n}) % to_u64(l) == 0) continue;
    least = l;
    break;
  }
  ck.check(least && c.emb && from_u64(c.emb->l) == *least, "supersingular: l is not the least prime of Phi_2N(s) outside 2N");
  ck.check(c.candidates == examined, "supersingular: candidates_examined mismatch");
  ck.check(c.emb && c.emb->embedding_degree == n, "supersingular: embedding degree is not N");
  const unsigned phi = static_cast<unsigned>(arith::euler_phi_u64(2 * n));
  ck.check(c.w.dim() == phi || 2 * c.w.dim() == phi, "supersingular: dimension is neither phi(2N) nor phi(2N)/2");
  ck.check(small(member(c.construction(), "phi_2N")) == phi, "supersingular: phi_2N mismatch");
  ck.check(small(member(c.construction(), "dimension")) == c.w.dim(), "supersingular: dimension mismatch");
  const auto dc = supersingular_dimension_check(c.w);
  ck.check(member(c.construction(), "dimension_check") == Json{{"order", dc.order}, {"dim", dc.dim}, {"holds", dc.holds}},
           "supersingular: dimension_check mismatch");
}

void verify_typeiv_core(const Json& inputs, const WeilNumber& w, Checker& ck, const Json* construction) {
  const Int p = int_from_json(member(inputs, "p"));
  const Int a = int_from_json(member(inputs, "a"));
  const unsigned d = small(member(inputs, "d"));
  ck.check(arith::is_prime(p) && d >= 3 && a * a < 4 * p && gcd(a, p) == 1, "typeiv: inputs violate the preconditions");
  const IntPolynomial base({p, -a, Int(1)});
  const auto x = NumberFieldElement::generator(base);
  const auto x_bar = NumberFieldElement::rational(base, Rational(a)) - x;
  const auto pi = power_element(x, d - 1) * x_bar;
  ck.check(minimal_polynomial(pi) == w.min_poly, "typeiv: min_poly is not that of pi^(d-1) conj(pi)");
  ck.check(w.p == p && w.k == d, "typeiv: field is not F_{p^d}");
  ck.check(w.k % d == 0, "typeiv: d does not divide k");
  if (construction) {
    ck.check(member(*construction, "base_poly") == to_json(base), "typeiv: base_poly mismatch");
    ck.check(member(*construction, "pi_tilde") == coords_json(pi.coordinates()), "typeiv: pi_tilde mismatch");
  }
}

void verify_typeiv(const Context& c, Checker& ck) {
  verify_typeiv_core(c.inputs(), c.w, ck, &c.construction());
  const unsigned d = small(member(c.inputs(), "d"));
  const HondaTateReport r = honda_tate(c.w);
  ck.check(r.classification == Classification::TypeIV && r.typeiv_d == d && r.dim == d, "typeiv: report is not TypeIV(1,d) of dimension d");
  bool low = false, high = false;
  for (const auto& inv : r.hasse_invariants) {
    low |= inv.invariant == Rational(1, d);
    high |= inv.invariant == Rational(d - 1, d);
  }
  ck.check(low && high, "typeiv: Hasse invariants 1/d and (d-1)/d missing");
  ck.check(r.polygon.slopes.size() == 2 && r.polygon.slopes[0] == Slope{Rational(1, d), d} &&
               r.polygon.slopes[1] == Slope{Rational(d - 1, d), d},
           "typeiv: Newton polygon is not d x 1/d, d x (d-1)/d");
  ck.check(c.exponent == 1, "typeiv: exponent must be 1");
  // l: least prime of P(1) outside p·disc, when it fits the bound
  const Int disc = discriminant(c.w.min_poly);
  std::uint64_t examined = 0;
  std::optional<std::uint64_t> least;
  for (const Int& l : arith::factor(c.w.min_poly.eval(Int(1)), c.config.factor_budget()).primes()) {
    ++examined;
    if (l == c.w.p || mpz_divisible_p(disc.get_mpz_t(), l.get_mpz_t())) continue;
    if (fits_word(l) && to_u64(l) <= c.config.l_max) least = to_u64(l);
    break;
  }
  ck.check(c.emb ? least && *least == c.emb->l : !least, "typeiv: l is not the least prime of P(1) outside p·disc");
  ck.check(c.candidates == examined, "typeiv: candidates_examined mismatch");
}

// Rescans the progression l = 1 mod step below the certified l.
template <class Pred>
void check_least_in_progression(const Context& c, std::uint64_t step, Pred qualifies, Checker& ck, const char* what) {
  std::uint64_t examined = 0;
  bool earlier = false;
  for (std::uint64_t l = step + 1; l < c.emb->l; l += step) {
    if (!arith::is_prime_u64(l)) continue;
    ++examined;
    if (qualifies(l)) {
      earlier = true;
      break;
    }
  }
  ck.check(!earlier, std::string(what) + ": a smaller prime qualifies");
  ck.check(c.candidates == examined + 1, std::string(what) + ": candidates_examined mismatch");
}

void verify_typeiv_embedding(const Context& c, Checker& ck) {
  verify_typeiv_core(c.inputs(), c.w, ck, nullptr);
  const unsigned n = small(member(c.inputs(), "N"));
  if (!c.emb) {
    ck.check(false, "typeiv-embed: embedding missing");
    return;
  }
  const std::uint64_t l = c.emb->l;
  const Int q = c.w.q(), disc = discriminant(c.w.min_poly);
  ck.check(n >= 1 && (l - 1) % n == 0 && l <= c.config.l_max, "typeiv-embed: l is not 1 mod N within l_max");
  ck.check(c.exponent == from_u64((l - 1) / n), "typeiv-embed: exponent is not (l-1)/N");
  const auto labels = scan::kummer_labels(scan::split_roots(c.w.min_poly, q, disc, l), q, l, n);
  ck.check(labels.has_value(), "typeiv-embed: residue orders fail at l");
  if (labels)
    ck.check(member(c.construction(), "residues") == Json{{"r", labels->r}, {"r_bar", labels->r_bar}},
             "typeiv-embed: residues mismatch");
  ck.check(member(c.construction(), "orders") == Json{{"r", 1}, {"r_bar", n}}, "typeiv-embed: orders mismatch");
  ck.check(c.emb->embedding_degree == n, "typeiv-embed: embedding degree is not N");
  check_least_in_progression(
      c, n, [&](std::uint64_t l2) { return scan::kummer_labels(scan::split_roots(c.w.min_poly, q, disc, l2), q, l2, n).has_value(); },
      ck, "typeiv-embed");
}

void verify_base_change(const Context& c, Checker& ck) {
  const Json& in = c.inputs();
  const Json& iw = member(in, "weil");
  ck.check(poly_from_json(member(iw, "min_poly")) == c.w.min_poly && int_from_json(member(iw, "p")) == c.w.p &&
               small(member(iw, "k")) == c.w.k,
           "basechange: weil differs from the input");
  const unsigned m = small(member(in, "m")), n = small(member(in, "n"));
  const std::uint64_t mn = std::uint64_t{m} * n;
  ck.check(c.w.degree() > 2, "basechange: [Q(pi):Q] must exceed 2");
  const std::string evidence = member(c.construction(), "absolute_simplicity").get<std::string>();
  if (evidence == "slope")
    ck.check(is_absolutely_simple_by_slope(c.w) == Tristate::Yes, "basechange: slope criterion does not hold");
  else if (evidence == "powers")
    ck.check(honda_tate(c.w).classification == Classification::Ordinary && absolutely_simple_by_powers(c.w),
             "basechange: power criterion does not hold");
  else
    ck.check(evidence == "attested" && member(in, "attest_absolutely_simple").get<bool>(),
             "basechange: absolute simplicity is not established");
  if (!c.emb) {
    ck.check(false, "basechange: embedding missing");
    return;
  }
  const std::uint64_t l = c.emb->l;
  const Int q = c.w.q(), disc = discriminant(c.w.min_poly);
  ck.check((l - 1) % mn == 0 && l <= c.config.l_max, "basechange: l is not 1 mod mn within l_max");
  ck.check(c.exponent == from_u64((l - 1) / mn), "basechange: exponent is not (l-1)/mn");
  const auto labels = scan::base_change_labels(scan::split_roots(c.w.min_poly, q, disc, l), q, l, m, n);
  ck.check(labels.has_value(), "basechange: residue orders fail at l");
  if (labels)
    ck.check(member(c.construction(), "residues") == Json{{"r", labels->r}, {"r_bar", labels->r_bar}, {"r1", labels->r1}},
             "basechange: residues mismatch");
  ck.check(member(c.construction(), "orders") == Json{{"r", 1}, {"r_bar", n}, {"r1", mn}}, "basechange: orders mismatch");
  ck.check(c.emb->embedding_degree == n, "basechange: embedding degree is not n");
  ck.check(c.emb->full_embedding_degree == mn, "basechange: full embedding degree is not mn");
  ck.check(full_embedding_degree_by_matrix(c.w.min_poly, l, c.exponent) == mn,
           "basechange: companion-matrix order differs from mn");
  check_least_in_progression(
      c, mn,
      [&](std::uint64_t l2) {
        return scan::base_change_labels(scan::split_roots(c.w.min_poly, q, disc, l2), q, l2, m, n).has_value();
      },
      ck, "basechange");
}

// CM field, conjugation, pi in L with pi·conj(pi) = p, and the reflex
// provenance of pi (type-norm identity checked on certified embeddings).
void verify_cm_common(const Context& c, Checker& ck) {
  const IntPolynomial lp = poly_from_json(member(c.inputs(), "L_poly"));
  const auto chosen = member(c.inputs(), "cm_type").get<std::vector<std::size_t>>();
  const Json& cons = c.construction();
  const Json& rj = member(cons, "reflex");
  ck.check(lp.is_monic() && lp.degree() % 2 == 0 && is_irreducible_over_Q(lp) && count_real_roots(lp) == 0,
           "cm: L_poly is not monic irreducible and totally imaginary");
  const auto conj = coords_from_json(member(rj, "conjugation"));
  const auto x = NumberFieldElement::generator(lp);
  const auto cx = NumberFieldElement::from_coordinates(lp, conj);
  const RatPolynomial conj_poly(conj);
  ck.check(evaluate(RatPolynomial(lp), cx).is_zero() && evaluate(conj_poly, cx) == x && !(cx == x),
           "cm: conjugation is not an involutive automorphism");

  const Int p = c.w.p;
  const auto pi_coords = coords_from_json(member(cons, "pi"));
  const auto pi = NumberFieldElement::from_coordinates(lp, pi_coords);
  const auto pi_bar = evaluate(RatPolynomial(pi_coords), cx);
  ck.check(pi * pi_bar == NumberFieldElement::rational(lp, Rational(p)), "cm: pi·conj(pi) != p");
  ck.check(minimal_polynomial(pi) == c.w.min_poly, "cm: min_poly is not that of pi");
  ck.check(c.w.degree() == static_cast<unsigned>(lp.degree()), "cm: pi lands in a strict subfield");
  ck.check(c.w.k == 1 && p <= from_u64(c.config.p_max), "cm: pi is not a Weil p-integer with p <= p_max");
  ck.check(honda_tate(c.w).classification == Classification::Ordinary, "cm: pi is not ordinary");

  const IntPolynomial rp = poly_from_json(member(rj, "reflex_poly"));
  const IntPolynomial shape = poly_from_json(member(rj, "generator_shape"));
  const auto types = member(rj, "types").get<std::vector<std::vector<std::size_t>>>();
  const std::size_t designated = member(rj, "designated").get<std::size_t>();
  const IntPolynomial alpha = poly_from_json(member(cons, "alpha"));
  const Int norm = int_from_json(member(cons, "alpha_norm"));
  ck.check(rp.is_monic() && is_irreducible_over_Q(rp), "cm: reflex_poly is not monic irreducible");
  ck.check(resultant(rp, alpha) == norm && abs(norm) == p, "cm: alpha does not have norm ±p");
  ck.check(fits_word(p) && splits_completely_mod(rp, to_u64(p)), "cm: p does not split completely in the reflex field");
  ck.check(designated < types.size() && types[designated] == [&] {
             auto s = chosen;
             std::sort(s.begin(), s.end());
             return s;
           }(),
           "cm: designated reflex root is not attached to the input CM type");

  // embeddings: types are CM types, sums are reflex roots, type norm matches pi
  ComplexEmbeddingSet le = certified_roots(lp);
  ComplexEmbeddingSet re = certified_roots(rp);
  ck.check(types.size() == re.roots.size(), "cm: one CM type per reflex root required");
  for (unsigned attempt = 0; attempt < 4; ++attempt) {
    const unsigned bits = std::min(le.precision_bits, re.precision_bits) + 32;
    bool consistent = types.size() == re.roots.size();
    bool resolved = true;
    std::vector<ComplexBall> vals(le.roots.size(), ComplexBall::exact(1));
    for (std::size_t j = 0; consistent && j < types.size(); ++j) {
      const auto& t = types[j];
      std::vector<bool> half(le.roots.size(), false);
      ComplexBall sum = ComplexBall::exact(0);
      for (std::size_t i : t) {
        if (i >= le.roots.size() || half[i] || half[le.conjugate[i]]) consistent = false;
        if (!consistent) break;
        half[i] = true;
        sum = sum + evaluate(shape, le.roots[i]);
      }
      if (!consistent || t.size() * 2 != le.roots.size()) {
        consistent = false;
        break;
      }
      const std::size_t at = re.locate(sum);
      if (at == re.roots.size()) resolved = false;
      else if (at != j) consistent = false;
      const ComplexBall a = round_center(evaluate(alpha, re.roots[j]), bits);
      for (std::size_t i : t) vals[i] = cm::mul(vals[i], a, bits);
    }
    for (std::size_t i = 0; consistent && i < le.roots.size(); ++i) {
      if (le.locate(cm::embed(conj, le.roots[i], bits)) != le.conjugate[i]) resolved = false;
      if (!cm::embed(pi_coords, le.roots[i], bits).intersects(vals[i])) consistent = false;
    }
    if (!consistent) {
      ck.check(false, "cm: reflex types or type norm do not match the embeddings");
      return;
    }
    if (resolved) return;
    le = refine(le, le.precision_bits * 2);
    re = refine(re, re.precision_bits * 2);
  }
  ck.check(false, "cm: embeddings could not be resolved");
}

void verify_ordinary_cm(const Context& c, Checker& ck) {
  verify_cm_common(c, ck);
  const unsigned n = small(member(c.inputs(), "N"));
  if (!c.emb) {
    ck.check(false, "ordinary-cm: embedding missing");
    return;
  }
  const Json& cons = c.construction();
  const IntPolynomial rp = poly_from_json(member(member(cons, "reflex"), "reflex_poly"));
  const IntPolynomial alpha = poly_from_json(member(cons, "alpha"));
  const Int p = c.w.p;
  const Int disc = discriminant(c.w.min_poly) * discriminant(rp);
  const std::uint64_t l = c.emb->l;
  ck.check(n >= 1 && (l - 1) % n == 0 && l <= c.config.l_max, "ordinary-cm: l is not 1 mod N within l_max");
  ck.check(c.exponent == from_u64((l - 1) / n), "ordinary-cm: exponent is not (l-1)/N");
  ck.check(c.emb->embedding_degree == n, "ordinary-cm: embedding degree is not N");

  // Kummer conditions on the residues of alpha's conjugates
  auto kummer = [&](std::uint64_t l2, Json* out) {
    const auto roots = scan::split_roots(rp, p, disc, l2);
    if (roots.empty()) return false;
    const std::uint64_t e = (l2 - 1) / n;
    std::vector<std::uint64_t> residues, orders;
    for (std::uint64_t s : roots) {
      residues.push_back(to_u64(arith::mod(alpha.eval(from_u64(s)), from_u64(l2))));
      orders.push_back(scan::power_order(residues.back(), e, l2));
    }
    std::size_t designated = roots.size();
    bool rest = true;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (orders[j] == n && designated == roots.size()) designated = j;
      else if (orders[j] != 1) rest = false;
    }
    if (designated == roots.size() || !rest) return false;
    if (out)
      *out = {{"reflex_roots_mod_l", roots}, {"alpha_residues", residues}, {"designated", designated}, {"orders", orders}};
    return true;
  };
  Json expected;
  ck.check(kummer(l, &expected), "ordinary-cm: Kummer residue conditions fail at l");
  std::uint64_t examined = 0;
  bool earlier = false;
  for (std::uint64_t l2 = n + 1; l2 < l; l2 += n) {
    if (!arith::is_prime_u64(l2)) continue;
    ++examined;
    if (kummer(l2, nullptr)) earlier = true;
    if (earlier) break;
  }
  ck.check(!earlier, "ordinary-cm: a smaller prime qualifies for this alpha");
  expected["l_candidates"] = examined + 1;
  ck.check(member(cons, "kummer") == expected, "ordinary-cm: kummer record mismatch");
}

void verify_ordinary_cm_full(const Context& c, Checker& ck) {
  verify_cm_common(c, ck);
  const unsigned m = small(member(c.inputs(), "m")), n = small(member(c.inputs(), "n"));
  const std::uint64_t l = u64_from_json(member(c.inputs(), "l"));
  const IntPolynomial lp = poly_from_json(member(c.inputs(), "L_poly"));
  ck.check(arith::is_prime_u64(l) && (l - 1) % (std::uint64_t{m} * n) == 0, "ordinary-cm-full: l is not a prime = 1 mod mn");
  ck.check(!mpz_divisible_ui_p(discriminant(lp).get_mpz_t(), l), "ordinary-cm-full: l divides disc(L)");
  ck.check(c.exponent == 1, "ordinary-cm-full: exponent must be 1");
  ck.check(c.emb && c.emb->l == l, "ordinary-cm-full: certified l differs from the input");
  ck.check(c.emb && c.emb->embedding_degree == n, "ordinary-cm-full: embedding degree is not n");
  ck.check(c.emb && c.emb->full_embedding_degree == std::uint64_t{m} * n, "ordinary-cm-full: full embedding degree is not mn");
  ck.check(full_embedding_degree_by_matrix(c.w.min_poly, l) == std::uint64_t{m} * n,
           "ordinary-cm-full: companion-matrix order differs from mn");

  // residue frame: alpha's residues at the reflex roots multiply to pi's residues at the roots of L
  const Json& res = member(c.construction(), "residues");
  const IntPolynomial rp = poly_from_json(member(member(c.construction(), "reflex"), "reflex_poly"));
  const auto l_roots = member(res, "L_roots_mod_l").get<std::vector<std::uint64_t>>();
  const auto r_roots = member(res, "reflex_roots_mod_l").get<std::vector<std::uint64_t>>();
  const auto rows = member(res, "type_rows").get<std::vector<std::vector<std::size_t>>>();
  const auto alpha_res = member(res, "alpha_residues").get<std::vector<std::uint64_t>>();
  const auto pi_res = member(res, "pi_residues").get<std::vector<std::uint64_t>>();
  ck.check(splits_completely_mod(lp, l) && l_roots == roots_mod(lp, l), "ordinary-cm-full: roots of L mod l mismatch");
  ck.check(splits_completely_mod(rp, l) && r_roots == roots_mod(rp, l), "ordinary-cm-full: reflex roots mod l mismatch");
  const IntPolynomial alpha = poly_from_json(member(c.construction(), "alpha"));
  const auto pi_coords = coords_from_json(member(c.construction(), "pi"));
  std::vector<std::uint64_t> a_expect, p_expect;
  for (std::uint64_t s : r_roots) a_expect.push_back(PrimeFieldPoly(l, alpha).eval(s));
  for (std::uint64_t x : l_roots) p_expect.push_back(cm::residue_at(pi_coords, x, l));
  ck.check(alpha_res == a_expect, "ordinary-cm-full: alpha residues mismatch");
  ck.check(pi_res == p_expect, "ordinary-cm-full: pi residues mismatch");
  ck.check(cm::type_rows_hold(rows, alpha_res, pi_res, l), "ordinary-cm-full: type rows do not carry alpha to pi");
  std::uint64_t lcm = 1;
  for (std::uint64_t v : pi_res) lcm = arith::lcm_u64(lcm, v == 0 ? 0 : arith::multiplicative_order_prime(v, l));
  ck.check(lcm == std::uint64_t{m} * n, "ordinary-cm-full: residue orders do not have lcm mn");
}

void verify_impl(const Json& doc, Checker& ck) {
  ck.check(member(doc, "format") == kCertificateFormat, "format: unknown certificate format");
  Json body = doc;
  body.erase("digest");
  ck.check(member(doc, "digest") == "fnv1a64:" + fnv1a64_hex(body.dump()), "digest: document was modified");

  Context c;
  c.doc = doc;
  c.kind = construction_kind_from_string(member(doc, "kind").get<std::string>());
  c.config = RunConfig::from_json(member(doc, "config"));
  ck.check(keys_are(doc, {"format", "kind", "inputs", "config", "weil", "exponent", "q", "expanded_min_poly", "l",
                          "embedding", "honda_tate", "construction", "search_trace", "digest"}),
           "format: unexpected top-level fields");
  ck.check(shape_ok(c.kind, member(doc, "inputs"), member(doc, "construction")), "format: unexpected inputs or construction fields");
  const WeilNumber claimed = weil_from_json(member(doc, "weil"));
  try {
    c.w = validate_weil(claimed.min_poly, claimed.p, claimed.k);
  } catch (const Error& e) {
    ck.check(false, std::string("weil: ") + e.what());
    return;
  }
  ck.check(c.w.m_pi == claimed.m_pi, "weil: m_pi mismatch");
  ck.check(to_json(c.w) == member(doc, "weil"), "weil: serialized fields mismatch");
  c.exponent = int_from_json(member(doc, "exponent"));
  ck.check(c.exponent >= 1, "exponent must be positive");
  ck.check(member(doc, "q") == Json{{"base", to_json(c.w.q())}, {"exponent", to_json(c.exponent)}}, "q: mismatch");

  const HondaTateReport report = honda_tate(c.w);
  ck.check(to_json(report) == member(doc, "honda_tate"), "honda_tate: report does not re-derive");
  ck.check(report.polygon.symmetric() && report.polygon.integral_breakpoints(), "honda_tate: polygon not symmetric with integral breakpoints");
  ck.check(2 * report.dim == c.w.degree() * report.index, "honda_tate: 2 dim != [Q(pi):Q] m_pi");

  const Json& ej = member(doc, "embedding");
  if (!ej.is_null()) {
    c.emb = embedding_from_json(ej, c.w);
    ck.check(c.emb->exponent == c.exponent, "embedding: exponent mismatch");
    ck.check(member(doc, "l") == Json(c.emb->l), "l: mismatch with the embedding certificate");
    for (const auto& f : verify_embedding(*c.emb)) ck.check(false, "embedding: " + f);
  } else {
    ck.check(member(doc, "l").is_null(), "l: present without an embedding certificate");
  }

  const Json& ex = member(doc, "expanded_min_poly");
  if (!ex.is_null()) {
    ck.check(c.exponent > 1, "expanded_min_poly: present for exponent 1");
    ck.check(poly_from_json(ex) == power_min_poly(c.w, c.exponent, c.config.expansion_bit_bound),
             "expanded_min_poly: does not match pi^exponent");
  }

  const Json& trace = member(doc, "search_trace");
  c.candidates = u64_from_json(member(trace, "candidates_examined"));
  ck.check(u64_from_json(member(trace, "seed")) == c.config.seed, "search_trace: seed differs from the config");

  switch (c.kind) {
  case ConstructionKind::Supersingular: verify_supersingular(c, ck); break;
  case ConstructionKind::TypeIV: verify_typeiv(c, ck); break;
  case ConstructionKind::TypeIVEmbedding: verify_typeiv_embedding(c, ck); break;
  case ConstructionKind::BaseChange: verify_base_change(c, ck); break;
  case ConstructionKind::OrdinaryCM: verify_ordinary_cm(c, ck); break;
  case ConstructionKind::OrdinaryCMFull: verify_ordinary_cm_full(c, ck); break;
  }
}

} // namespace

std::vector<std::string> verify_certificate(const Json& document) {
  Checker ck;
  try {
    verify_impl(document, ck);
  } catch (const Error& e) {
    ck.check(false, std::string("certificate rejected: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    ck.check(false, std::string("certificate rejected: malformed JSON: ") + e.what());
  }
  return ck.failures;
}

} // namespace avforge
