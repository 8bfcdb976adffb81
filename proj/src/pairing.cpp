#include "avforge/pairing.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/matrix.hpp"
#include "avforge/prime_field.hpp"

#include <algorithm>
#include <map>

namespace avforge {

namespace {

void require_prime_l(std::uint64_t l) {
  require(l >= 2 && l < (std::uint64_t{1} << 62) && arith::is_prime_u64(l), "l must be a prime below 2^62");
}

void require_coprime_to_q(const WeilNumber& w, std::uint64_t l) {
  require(!mpz_divisible_ui_p(w.p.get_mpz_t(), l), "l must not divide q");
}

void require_unramified(const IntPolynomial& poly, std::uint64_t l) {
  const Int d = discriminant(poly);
  if (mpz_divisible_ui_p(d.get_mpz_t(), l))
    fail(ErrorKind::Unsupported, "ramified or index-divisor l unsupported (l = " + std::to_string(l) + " divides disc)");
}

// Factorization of lcm(l^k - 1 : k in degrees).
arith::Factorization lcm_exponent(std::uint64_t l, const std::vector<unsigned>& degrees) {
  std::map<Int, unsigned> best;
  for (unsigned k : degrees)
    for (const auto& pe : arith::factor_power_minus_one(from_u64(l), k).factors)
      best[pe.prime] = std::max(best[pe.prime], pe.exponent);
  arith::Factorization f{1, {}};
  for (const auto& [prime, e] : best) {
    f.factors.push_back({prime, e});
    f.value *= pow_int(prime, e);
  }
  return f;
}

} // namespace

Int group_order(const WeilNumber& w) { return pow_int(w.min_poly.eval(Int(1)), w.m_pi); }

Divisibility divides_order(const WeilNumber& w, std::uint64_t l) {
  require_prime_l(l);
  require_coprime_to_q(w, l);
  Divisibility d;
  d.divides = mpz_divisible_ui_p(Int(w.min_poly.eval(Int(1))).get_mpz_t(), l) != 0;
  if (d.divides) d.witness = 1;
  return d;
}

std::uint64_t embedding_degree(const WeilNumber& w, std::uint64_t l, const Int& exponent) {
  require_prime_l(l);
  require_coprime_to_q(w, l);
  if (exponent == 1) require(divides_order(w, l).divides, "embedding_degree: l does not divide the group order");
  const std::uint64_t qe = to_u64(arith::mod_pow(w.q(), exponent, from_u64(l)));
  return arith::multiplicative_order_prime(qe, l);
}

Int full_embedding_degree_by_factors(const IntPolynomial& poly, std::uint64_t l, const Int& exponent) {
  require_prime_l(l);
  auto fac = factor_mod(poly, l);
  Int result = 1;
  for (const auto& piece : fac.factors) {
    FiniteFieldExt field(l, piece.factor);
    const PrimeFieldPoly x = field.pow(field.generator(), exponent);
    require(!x.is_zero(), "full embedding degree: X is zero in a residue field (l divides the constant term)");
    const Int ord = field.element_order(x);
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), ord.get_mpz_t());
  }
  return result;
}

Int full_embedding_degree_by_matrix(const IntPolynomial& poly, std::uint64_t l, const Int& exponent) {
  require_prime_l(l);
  require(poly.is_monic(), "companion matrix needs a monic polynomial");
  const ModMatrix c = ModMatrix(IntMatrix::companion(poly), l).pow(exponent);
  require(c.determinant() != 0, "full embedding degree: companion matrix is singular mod l");
  std::vector<unsigned> degrees;
  for (unsigned k = 1; k <= static_cast<unsigned>(poly.degree()); ++k) degrees.push_back(k);
  const auto exp = lcm_exponent(l, degrees);
  require(c.pow(exp.value).is_identity(), "full embedding degree: matrix order does not divide lcm(l^k - 1)");
  return arith::order_by_descent(exp, [&](const Int& e) { return c.pow(e).is_identity(); });
}

std::uint64_t full_embedding_degree(const WeilNumber& w, std::uint64_t l, const Int& exponent) {
  require_prime_l(l);
  require_coprime_to_q(w, l);
  require_unramified(w.min_poly, l);
  const Int a = full_embedding_degree_by_factors(w.min_poly, l, exponent);
  const Int b = full_embedding_degree_by_matrix(w.min_poly, l, exponent);
  if (a != b)
    fail(ErrorKind::Verification, "full embedding degree routes disagree: " + a.get_str() + " vs " + b.get_str());
  return to_u64(a);
}

bool koblitz_check(const WeilNumber& w, std::uint64_t l) {
  require(w.degree() == 2 && w.dim() == 1, "koblitz_check: needs an elliptic Weil number");
  require_prime_l(l);
  require(divides_order(w, l).divides, "koblitz_check: l must divide the group order");
  require(!mpz_divisible_ui_p(Int(w.q() - 1).get_mpz_t(), l), "koblitz_check: l must not divide q - 1");
  require(!mpz_divisible_ui_p(Int(w.q() * discriminant(w.min_poly)).get_mpz_t(), l),
          "koblitz_check: l must not divide q·disc");
  return full_embedding_degree(w, l) == embedding_degree(w, l);
}

EmbeddingCertificate certify_embedding(const WeilNumber& w, std::uint64_t l, const Int& exponent) {
  require_prime_l(l);
  require_coprime_to_q(w, l);
  require_unramified(w.min_poly, l);
  EmbeddingCertificate c;
  c.w = w;
  c.exponent = exponent;
  c.l = l;
  if (exponent == 1) c.group_order = group_order(w);
  c.residue_roots = roots_mod(w.min_poly, l);
  const Int lz = from_u64(l);
  auto it = std::find_if(c.residue_roots.begin(), c.residue_roots.end(),
                         [&](std::uint64_t r) { return arith::mod_pow(from_u64(r), exponent, lz) == 1; });
  require(it != c.residue_roots.end(), "l does not divide the group order (no root with residue 1)");
  c.designated_residue = *it;
  c.embedding_degree = embedding_degree(w, l, exponent);
  c.full_embedding_degree = full_embedding_degree(w, l, exponent);
  return c;
}

std::vector<std::string> verify_embedding(const EmbeddingCertificate& cert) {
  std::vector<std::string> bad;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  const std::uint64_t l = cert.l;
  if (l < 2 || !arith::is_prime_u64(l)) return {"l is not prime"};
  if (mpz_divisible_ui_p(cert.w.p.get_mpz_t(), l)) return {"l divides q"};
  try {
    const WeilNumber fresh = validate_weil(cert.w.min_poly, cert.w.p, cert.w.k);
    check(fresh.m_pi == cert.w.m_pi, "index m_pi");
  } catch (const Error& e) {
    return {std::string("weil number: ") + e.what()};
  }
  const Int lz = from_u64(l);
  if (cert.exponent == 1) {
    check(cert.group_order.has_value() && *cert.group_order == group_order(cert.w), "group order");
    check(cert.group_order.has_value() && mpz_divisible_ui_p(cert.group_order->get_mpz_t(), l), "l divides the group order");
  } else {
    check(!cert.group_order.has_value(), "symbolic certificate carries no expanded group order");
  }
  check(cert.residue_roots == roots_mod(cert.w.min_poly, l), "residue roots");
  check(std::find(cert.residue_roots.begin(), cert.residue_roots.end(), cert.designated_residue) != cert.residue_roots.end(),
        "designated residue is a root");
  check(arith::mod_pow(from_u64(cert.designated_residue), cert.exponent, lz) == 1, "designated residue maps to 1");
  const std::uint64_t qe = to_u64(arith::mod_pow(cert.w.q(), cert.exponent, lz));
  check(cert.embedding_degree == arith::multiplicative_order_prime(qe, l), "embedding degree");
  try {
    check(cert.full_embedding_degree == full_embedding_degree(cert.w, l, cert.exponent), "full embedding degree");
  } catch (const Error& e) {
    bad.push_back(std::string("full embedding degree: ") + e.what());
  }
  check(cert.embedding_degree != 0 && (l - 1) % cert.embedding_degree == 0, "embedding degree divides l - 1");
  check(cert.embedding_degree != 0 && cert.full_embedding_degree % cert.embedding_degree == 0,
        "embedding degree divides full embedding degree");
  if (cert.residue_roots.size() == cert.w.degree())
    check((l - 1) % cert.full_embedding_degree == 0, "full embedding degree divides l - 1 when l splits");
  return bad;
}

} // namespace avforge
