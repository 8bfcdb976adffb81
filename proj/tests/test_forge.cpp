#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/forge.hpp"
#include "avforge/pairing.hpp"

#include <string>
#include <vector>

using namespace avforge;

namespace {

std::uint64_t brute_order(std::uint64_t a, std::uint64_t l) {
  std::uint64_t x = a % l;
  for (std::uint64_t d = 1; d < l; ++d) {
    if (x == 1) return d;
    x = x * (a % l) % l;
  }
  return 0;
}

bool brute_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// roots of P mod l by trying every residue
std::vector<std::uint64_t> brute_roots(const IntPolynomial& p, std::uint64_t l) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < l; ++x) {
    Int v = p.eval(Int(static_cast<unsigned long>(x))) % Int(static_cast<unsigned long>(l));
    if (v == 0) out.push_back(x);
  }
  return out;
}

std::uint64_t pow_small(std::uint64_t a, std::uint64_t e, std::uint64_t l) {
  std::uint64_t r = 1;
  a %= l;
  for (; e; e >>= 1, a = a * a % l)
    if (e & 1) r = r * a % l;
  return r;
}

// one-field change of a JSON leaf
Json mutated(const Json& v) {
  if (v.is_boolean()) return !v.get<bool>();
  if (v.is_null()) return 0;
  if (v.is_number_unsigned()) return v.get<std::uint64_t>() + 1;
  if (v.is_number_integer()) return v.get<std::int64_t>() + 1;
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (!s.empty() && std::isdigit(static_cast<unsigned char>(s.back()))) s.back() = static_cast<char>('0' + (s.back() - '0' + 1) % 10);
    else s += "x";
    return s;
  }
  return Json::array({1});
}

Json redigest(Json doc) {
  doc.erase("digest");
  doc["digest"] = "fnv1a64:" + fnv1a64_hex(doc.dump());
  return doc;
}

struct Sample {
  std::string name;
  Json doc;
};

RunConfig wide() {
  RunConfig c;
  c.p_max = 1000000;
  return c;
}

std::vector<Sample> samples() {
  return {
      {"supersingular", to_json(construct_supersingular(3, 4))},
      {"typeiv", to_json(construct_typeiv(5, 2, 3))},
      {"typeiv-embed", to_json(construct_typeiv_embedding(construct_typeiv(5, 2, 3), 2))},
      {"basechange", to_json(construct_base_change(validate_weil(IntPolynomial{9, 3, 1, 1, 1}, 3, 1), 2, 2))},
      {"ordinary-cm", to_json(construct_ordinary_cm(make_cm_type(IntPolynomial{1, 1, 1, 1, 1}, {0, 1}), 3))},
      {"ordinary-cm-full",
       to_json(construct_ordinary_cm_full(make_cm_type(IntPolynomial{1, 1, 1, 1, 1}, {0, 1}), 2, 3, 31, wide()))},
  };
}

} // namespace

TEST_CASE("supersingular: X^4 + 81 over F_9 with l = 41") {
  const auto c = construct_supersingular(3, 4);
  CHECK(c.weil.min_poly == IntPolynomial{81, 0, 0, 0, 1});
  CHECK(c.weil.q() == 9);
  REQUIRE(c.embedding);
  CHECK(c.embedding->l == 41);
  CHECK(c.embedding->embedding_degree == 4);
  CHECK(brute_order(9, 41) == 4);
  CHECK(group_order(c.weil) == 82);
  // least prime factor of Phi_8(3) = 82 outside 2N
  std::uint64_t least = 0;
  for (std::uint64_t l = 2; l <= 82 && !least; ++l)
    if (brute_prime(l) && 82 % l == 0 && 8 % l != 0) least = l;
  CHECK(least == 41);
}

TEST_CASE("supersingular: embedding degree N and the dimension window") {
  for (unsigned s : {2u, 3u, 5u, 7u}) {
    for (unsigned n = 1; n <= 8; ++n) {
      CAPTURE(s);
      CAPTURE(n);
      // no admissible l when every prime of Phi_2N(s) divides 2N
      bool admissible = false;
      for (const Int& l : arith::factor(arith::cyclotomic_poly(2 * n).eval(Int(s))).primes())
        admissible |= (2 * n) % to_u64(l) != 0;
      if (!admissible) {
        CHECK_THROWS_AS(construct_supersingular(s, n), Error);
        continue;
      }
      const auto c = construct_supersingular(s, n);
      REQUIRE(c.embedding);
      CHECK(brute_order(static_cast<std::uint64_t>(s) * s % c.embedding->l, c.embedding->l) == n);
      const unsigned phi = static_cast<unsigned>(c.weil.degree());
      CHECK((c.honda_tate.dim == phi || 2 * c.honda_tate.dim == phi));
    }
  }
}

TEST_CASE("typeiv: pi^2 conj(pi) for pi = 1 + 2i") {
  const auto c = construct_typeiv(5, 2, 3);
  // (1 + 2i)^2 (1 - 2i) = 5 (1 + 2i) = 5 + 10i
  CHECK(c.weil.min_poly == IntPolynomial{125, -10, 1});
  CHECK(c.weil.k == 3);
  CHECK(c.honda_tate.dim == 3);
  CHECK(c.honda_tate.classification == Classification::TypeIV);
  std::vector<Rational> inv;
  for (const auto& h : c.honda_tate.hasse_invariants) inv.push_back(h.invariant);
  std::sort(inv.begin(), inv.end());
  CHECK(inv == std::vector<Rational>{Rational(1, 3), Rational(2, 3)});
  CHECK(c.construction["pi_tilde"] == Json::array({"0", "5"}));
  REQUIRE(c.embedding);
  CHECK(c.embedding->embedding_degree == c.embedding->full_embedding_degree);
}

TEST_CASE("typeiv-embed: residue orders checked by brute force") {
  const auto c = construct_typeiv_embedding(construct_typeiv(5, 2, 3), 2);
  REQUIRE(c.embedding);
  const std::uint64_t l = c.embedding->l;
  CHECK((l - 1) % 2 == 0);
  const auto roots = brute_roots(c.weil.min_poly, l);
  REQUIRE(roots.size() == 2);
  const std::uint64_t e = (l - 1) / 2;
  std::vector<std::uint64_t> ords;
  for (auto r : roots) ords.push_back(brute_order(pow_small(r, e, l), l));
  std::sort(ords.begin(), ords.end());
  CHECK(ords == std::vector<std::uint64_t>{1, 2});
  CHECK(c.embedding->embedding_degree == 2);
}

TEST_CASE("basechange: embedding degree 2, full degree 4") {
  const auto c = construct_base_change(validate_weil(IntPolynomial{9, 3, 1, 1, 1}, 3, 1), 2, 2);
  REQUIRE(c.embedding);
  const std::uint64_t l = c.embedding->l;
  CHECK(l < 100000);
  CHECK(c.embedding->embedding_degree == 2);
  CHECK(c.embedding->full_embedding_degree == 4);
  // orders of the roots raised to (l-1)/4, by brute force
  const std::uint64_t e = (l - 1) / 4;
  std::uint64_t lcm = 1;
  for (auto r : brute_roots(IntPolynomial{9, 3, 1, 1, 1}, l)) {
    const auto o = brute_order(pow_small(r, e, l), l);
    lcm = std::lcm(lcm, o);
  }
  CHECK(lcm == 4);
  CHECK(full_embedding_degree_by_matrix(c.weil.min_poly, l, c.exponent) == 4);
}

TEST_CASE("ordinary CM on Q(zeta_5)") {
  const auto c = construct_ordinary_cm(make_cm_type(IntPolynomial{1, 1, 1, 1, 1}, {0, 1}), 3);
  CHECK(c.weil.degree() == 4);
  CHECK(c.weil.k == 1);
  CHECK(c.honda_tate.classification == Classification::Ordinary);
  REQUIRE(c.embedding);
  CHECK(c.embedding->embedding_degree == 3);
  const std::uint64_t p = to_u64(c.weil.p);
  CHECK(brute_order(pow_small(p, to_u64(c.exponent), c.embedding->l), c.embedding->l) == 3);
}

TEST_CASE("ordinary CM error paths") {
  // biquadratic X^4 + 1: the type {0, 1} is induced from a quadratic subfield
  CHECK_THROWS_AS(construct_ordinary_cm(make_cm_type(IntPolynomial{1, 0, 0, 0, 1}, {0, 1}), 3), Error);
  // p = -1 mod l with a residue of order 4 forces a repeated Frobenius residue
  try {
    construct_ordinary_cm_full(make_cm_type(IntPolynomial{1, 1, 1, 1, 1}, {0, 1}), 2, 2, 41, wide());
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("ordinary CM full: torsion-field degree 6 over F_p at l = 31") {
  const auto c = construct_ordinary_cm_full(make_cm_type(IntPolynomial{1, 1, 1, 1, 1}, {0, 1}), 2, 3, 31, wide());
  REQUIRE(c.embedding);
  CHECK(c.embedding->l == 31);
  CHECK(c.embedding->embedding_degree == 3);
  CHECK(c.embedding->full_embedding_degree == 6);
  CHECK(brute_order(to_u64(c.weil.p) % 31, 31) == 3);
  std::uint64_t lcm = 1;
  const auto roots = brute_roots(c.weil.min_poly, 31);
  CHECK(roots.size() == 4);
  for (auto r : roots) lcm = std::lcm(lcm, brute_order(r, 31));
  CHECK(lcm == 6);
}

TEST_CASE("certificates round-trip through verification") {
  for (const auto& s : samples()) {
    CAPTURE(s.name);
    const auto failures = verify_certificate(Json::parse(s.doc.dump()));
    CHECK(failures.empty());
    for (const auto& f : failures) MESSAGE(f);
  }
}

TEST_CASE("every single-field tamper is rejected") {
  for (const auto& s : samples()) {
    const Json flat = s.doc.flatten();
    for (const auto& [ptr, value] : flat.items()) {
      CAPTURE(s.name);
      CAPTURE(ptr);
      Json t = s.doc;
      t[Json::json_pointer(ptr)] = mutated(value);
      CHECK(!verify_certificate(t).empty());
    }
  }
}

TEST_CASE("mathematical fields are re-derived even with a fresh digest") {
  for (const auto& s : samples()) {
    const Json flat = s.doc.flatten();
    for (const auto& [ptr, value] : flat.items()) {
      // run limits that do not bind leave the claims true; the CM search
      // counters and an unused attestation are echoes guarded by the digest
      if (ptr.rfind("/config/", 0) == 0 || ptr == "/digest" || ptr == "/inputs/attest_absolutely_simple" ||
          ptr == "/construction/residues/target" ||
          (s.name.rfind("ordinary-cm", 0) == 0 && ptr == "/search_trace/candidates_examined"))
        continue;
      CAPTURE(s.name);
      CAPTURE(ptr);
      Json t = s.doc;
      t[Json::json_pointer(ptr)] = mutated(value);
      CHECK(!verify_certificate(redigest(t)).empty());
    }
  }
}

TEST_CASE("identical inputs give byte-identical certificates") {
  const auto a = samples();
  const auto b = samples();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].doc.dump() == b[i].doc.dump());
}
