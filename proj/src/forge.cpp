#include "avforge/forge.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/number_field.hpp"
#include "forge_detail.hpp"
#include "scan.hpp"

#include <algorithm>
#include <cmath>

namespace avforge {

const char* to_string(ConstructionKind kind) {
  switch (kind) {
  case ConstructionKind::Supersingular: return "supersingular";
  case ConstructionKind::BaseChange: return "basechange";
  case ConstructionKind::TypeIV: return "typeiv";
  case ConstructionKind::TypeIVEmbedding: return "typeiv-embed";
  case ConstructionKind::OrdinaryCM: return "ordinary-cm";
  case ConstructionKind::OrdinaryCMFull: return "ordinary-cm-full";
  }
  return "unknown";
}

ConstructionKind construction_kind_from_string(const std::string& name) {
  for (auto k : {ConstructionKind::Supersingular, ConstructionKind::BaseChange, ConstructionKind::TypeIV,
                 ConstructionKind::TypeIVEmbedding, ConstructionKind::OrdinaryCM, ConstructionKind::OrdinaryCMFull})
    if (name == to_string(k)) return k;
  fail(ErrorKind::Domain, "unknown construction kind '" + name + "'");
}

const char* to_string(SimplicityEvidence e) {
  switch (e) {
  case SimplicityEvidence::Slope: return "slope";
  case SimplicityEvidence::Powers: return "powers";
  case SimplicityEvidence::Attested: return "attested";
  }
  return "attested";
}

Json to_json(const ConstructionCertificate& c) {
  Json j;
  j["format"] = kCertificateFormat;
  j["kind"] = to_string(c.kind);
  j["inputs"] = c.inputs;
  j["config"] = c.config.to_json();
  j["weil"] = to_json(c.weil);
  j["exponent"] = to_json(c.exponent);
  j["q"] = {{"base", to_json(c.weil.q())}, {"exponent", to_json(c.exponent)}};
  j["expanded_min_poly"] = c.expanded_min_poly ? to_json(*c.expanded_min_poly) : Json(nullptr);
  j["l"] = c.embedding ? Json(c.embedding->l) : Json(nullptr);
  j["honda_tate"] = to_json(c.honda_tate);
  j["embedding"] = c.embedding ? to_json(*c.embedding) : Json(nullptr);
  j["construction"] = c.construction;
  j["search_trace"] = {{"candidates_examined", c.trace.candidates_examined}, {"seed", c.trace.seed}};
  j["digest"] = "fnv1a64:" + fnv1a64_hex(j.dump());
  return j;
}

namespace detail {

ConstructionCertificate start(ConstructionKind kind, Json inputs, const RunConfig& config, const WeilNumber& w) {
  ConstructionCertificate c;
  c.kind = kind;
  c.inputs = std::move(inputs);
  c.config = config;
  c.weil = w;
  c.honda_tate = honda_tate(w);
  c.trace.seed = config.seed;
  return c;
}

// pi^e expanded only when the rough size estimate and the exact guard allow it
std::optional<IntPolynomial> try_expand(const WeilNumber& w, const Int& e, const RunConfig& config) {
  if (e == 1) return std::nullopt;
  const double bits_per_power = std::log2(w.p.get_d()) * w.k * w.degree() / 2.0 + 1;
  if (e.get_d() * bits_per_power > static_cast<double>(config.expansion_bit_bound)) return std::nullopt;
  try {
    return power_min_poly(w, e, config.expansion_bit_bound);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ExpansionTooLarge) throw;
    return std::nullopt;
  }
}

} // namespace detail

namespace {

using detail::start;
using detail::try_expand;

void expect(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::Verification, what);
}

} // namespace

ConstructionCertificate construct_supersingular(const Int& s, unsigned n, const RunConfig& config) {
  require(s >= 2, "construct_supersingular: s must be at least 2");
  require(n >= 1, "construct_supersingular: N must be positive");
  require(!(s == 2 && n == 3), "construct_supersingular: (q, N) = (4, 3) is excluded");
  const auto sf = arith::factor(s, config.factor_budget());
  require(sf.factors.size() == 1, "construct_supersingular: s must be a prime power");
  const Int p = sf.factors[0].prime;
  const unsigned k = 2 * sf.factors[0].exponent;

  const WeilNumber w = validate_weil(scan::scaled_cyclotomic(2 * n, s), p, k);
  const Int value = arith::cyclotomic_poly(2 * n).eval(s);
  const auto vf = arith::factor(value, config.factor_budget());

  Json inputs;
  inputs["s"] = to_json(s);
  inputs["N"] = n;
  ConstructionCertificate c = start(ConstructionKind::Supersingular, inputs, config, w);
  for (const Int& l : vf.primes()) {
    ++c.trace.candidates_examined;
    if (fits_word(l) && (2 * std::uint64_t{n}) % to_u64(l) == 0) continue;
    if (!fits_word(l) || to_u64(l) > config.l_max)
      fail(ErrorKind::BudgetExceeded, "no qualifying prime <= l_max (least candidate " + l.get_str() + ")");
    c.embedding = certify_embedding(w, to_u64(l));
    break;
  }
  // Zsigmondy exceptions: s + 1 a power of 2 at N = 1, and (s, N) = (2, 3)
  if (!c.embedding) fail(ErrorKind::Domain, "construct_supersingular: no prime of Phi_2N(s) outside 2N");
  expect(c.embedding->embedding_degree == n, "construct_supersingular: embedding degree differs from N");

  const unsigned phi = static_cast<unsigned>(arith::euler_phi_u64(2 * n));
  c.construction["q"] = to_json(w.q());
  c.construction["cyclotomic_value"] = to_json(value);
  c.construction["phi_2N"] = phi;
  c.construction["dimension"] = w.dim();
  const auto dc = supersingular_dimension_check(w);
  c.construction["dimension_check"] = {{"order", dc.order}, {"dim", dc.dim}, {"holds", dc.holds}};
  return c;
}

ConstructionCertificate construct_typeiv(const Int& p, const Int& a, unsigned d, const RunConfig& config) {
  require(p >= 2 && arith::is_prime(p), "construct_typeiv: p must be prime");
  require(d >= 3, "construct_typeiv: d must be at least 3");
  require(a * a < 4 * p, "construct_typeiv: need a^2 < 4p");
  require(gcd(a, p) == 1, "construct_typeiv: need gcd(a, p) = 1");

  const IntPolynomial base({p, -a, Int(1)});
  const auto x = NumberFieldElement::generator(base);
  const auto x_bar = NumberFieldElement::rational(base, Rational(a)) - x;
  const auto pi = power_element(x, d - 1, config.expansion_bit_bound) * x_bar;
  const WeilNumber w = validate_weil(minimal_polynomial(pi), p, d);

  Json inputs;
  inputs["p"] = to_json(p);
  inputs["a"] = to_json(a);
  inputs["d"] = d;
  ConstructionCertificate c = start(ConstructionKind::TypeIV, inputs, config, w);
  expect(c.honda_tate.classification == Classification::TypeIV && c.honda_tate.typeiv_d == d,
         "construct_typeiv: report is not TypeIV(1,d)");

  const Int order = w.min_poly.eval(Int(1));
  const Int disc = discriminant(w.min_poly);
  for (const Int& l : arith::factor(order, config.factor_budget()).primes()) {
    ++c.trace.candidates_examined;
    if (l == p || mpz_divisible_p(disc.get_mpz_t(), l.get_mpz_t())) continue;
    if (!fits_word(l) || to_u64(l) > config.l_max) break;
    c.embedding = certify_embedding(w, to_u64(l));
    break;
  }

  Json coords = Json::array();
  for (const auto& v : pi.coordinates()) coords.push_back(to_json(v));
  c.construction["base_poly"] = to_json(base);
  c.construction["pi_tilde"] = coords;
  return c;
}

ConstructionCertificate construct_typeiv_embedding(const ConstructionCertificate& typeiv, unsigned n,
                                                   const RunConfig& config) {
  require(typeiv.kind == ConstructionKind::TypeIV, "construct_typeiv_embedding: input must be a typeiv certificate");
  require(n >= 1, "construct_typeiv_embedding: N must be positive");
  const WeilNumber& w = typeiv.weil;
  const Int q = w.q();
  const Int disc = discriminant(w.min_poly);

  Json inputs = typeiv.inputs;
  inputs["N"] = n;
  ConstructionCertificate c = start(ConstructionKind::TypeIVEmbedding, inputs, config, w);
  for (std::uint64_t l = n + 1; l <= config.l_max; l += n) {
    if (!arith::is_prime_u64(l)) continue;
    ++c.trace.candidates_examined;
    const auto roots = scan::split_roots(w.min_poly, q, disc, l);
    if (roots.empty()) continue;
    const auto labels = scan::kummer_labels(roots, q, l, n);
    if (!labels) continue;
    c.exponent = from_u64((l - 1) / n);
    c.embedding = certify_embedding(w, l, c.exponent);
    expect(c.embedding->embedding_degree == n, "construct_typeiv_embedding: embedding degree differs from N");
    c.expanded_min_poly = try_expand(w, c.exponent, config);
    c.construction["residues"] = {{"r", labels->r}, {"r_bar", labels->r_bar}};
    c.construction["orders"] = {{"r", 1}, {"r_bar", n}};
    return c;
  }
  fail(ErrorKind::BudgetExceeded, "no qualifying prime <= l_max (" + std::to_string(config.l_max) + ")");
}

ConstructionCertificate construct_base_change(const WeilNumber& w, unsigned m, unsigned n, const RunConfig& config,
                                              bool attest_absolutely_simple) {
  require(w.degree() > 2, "construct_base_change: need [Q(pi):Q] > 2");
  require(m >= 1 && n >= 1, "construct_base_change: m and n must be positive");
  SimplicityEvidence evidence = SimplicityEvidence::Attested;
  if (is_absolutely_simple_by_slope(w) == Tristate::Yes)
    evidence = SimplicityEvidence::Slope;
  else if (honda_tate(w).classification == Classification::Ordinary && absolutely_simple_by_powers(w))
    evidence = SimplicityEvidence::Powers;
  else
    require(attest_absolutely_simple, "construct_base_change: absolute simplicity not established; attest it explicitly");

  const Int q = w.q();
  const Int disc = discriminant(w.min_poly);
  const std::uint64_t mn = std::uint64_t{m} * n;

  Json inputs;
  inputs["weil"] = {{"min_poly", to_json(w.min_poly)}, {"p", to_json(w.p)}, {"k", w.k}};
  inputs["m"] = m;
  inputs["n"] = n;
  inputs["attest_absolutely_simple"] = attest_absolutely_simple;
  ConstructionCertificate c = start(ConstructionKind::BaseChange, inputs, config, w);
  for (std::uint64_t l = mn + 1; l <= config.l_max; l += mn) {
    if (!arith::is_prime_u64(l)) continue;
    ++c.trace.candidates_examined;
    const auto roots = scan::split_roots(w.min_poly, q, disc, l);
    if (roots.empty()) continue;
    const auto labels = scan::base_change_labels(roots, q, l, m, n);
    if (!labels) continue;
    c.exponent = from_u64((l - 1) / mn);
    c.embedding = certify_embedding(w, l, c.exponent);
    expect(c.embedding->embedding_degree == n, "construct_base_change: embedding degree differs from n");
    expect(c.embedding->full_embedding_degree == mn, "construct_base_change: full embedding degree differs from mn");
    c.expanded_min_poly = try_expand(w, c.exponent, config);
    c.construction["absolute_simplicity"] = to_string(evidence);
    c.construction["residues"] = {{"r", labels->r}, {"r_bar", labels->r_bar}, {"r1", labels->r1}};
    c.construction["orders"] = {{"r", 1}, {"r_bar", n}, {"r1", mn}};
    return c;
  }
  fail(ErrorKind::BudgetExceeded, "no qualifying prime <= l_max (" + std::to_string(config.l_max) + ")");
}

} // namespace avforge
