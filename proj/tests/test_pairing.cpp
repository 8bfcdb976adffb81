#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/matrix.hpp"
#include "avforge/pairing.hpp"
#include "avforge/prime_field.hpp"

#include <cmath>
#include <random>

using namespace avforge;

namespace {

// least d with C^d = I mod l, by stepping
std::uint64_t brute_matrix_order(const IntPolynomial& poly, std::uint64_t l, std::uint64_t cap = 2000000) {
  const ModMatrix c(IntMatrix::companion(poly), l);
  ModMatrix x = c;
  for (std::uint64_t d = 1; d <= cap; ++d) {
    if (x.is_identity()) return d;
    x = x * c;
  }
  return 0;
}

std::uint64_t brute_order(std::uint64_t a, std::uint64_t l) {
  std::uint64_t x = a % l;
  for (std::uint64_t d = 1;; ++d) {
    if (x == 1) return d;
    x = x * a % l;
  }
}

} // namespace

TEST_CASE("group orders and divisibility") {
  CHECK(group_order(validate_weil(IntPolynomial{5, -2, 1}, 5, 1)) == 4);
  CHECK(group_order(validate_weil(IntPolynomial{81, 0, 0, 0, 1}, 3, 2)) == 82);
  CHECK(group_order(validate_weil(IntPolynomial{-3, 1}, 3, 2)) == 4);
  auto w7 = validate_weil(IntPolynomial{7, -3, 1}, 7, 1);
  auto d = divides_order(w7, 5);
  CHECK(d.divides);
  CHECK(d.witness == 1u);
  CHECK_FALSE(divides_order(validate_weil(IntPolynomial{5, -2, 1}, 5, 1), 3).divides);
  CHECK_THROWS_AS(divides_order(w7, 7), Error);
}

TEST_CASE("embedding and full embedding degree examples") {
  auto w81 = validate_weil(IntPolynomial{81, 0, 0, 0, 1}, 3, 2);
  CHECK(embedding_degree(w81, 41) == 4);
  auto w7 = validate_weil(IntPolynomial{7, -3, 1}, 7, 1);
  CHECK(embedding_degree(w7, 5) == 4);
  CHECK(full_embedding_degree(w7, 5) == 4);
  CHECK(koblitz_check(w7, 5));
  CHECK(roots_mod(w7.min_poly, 5) == std::vector<std::uint64_t>{1, 2});
  auto w5 = validate_weil(IntPolynomial{5, -2, 1}, 5, 1);
  CHECK_THROWS_AS(koblitz_check(w5, 2), Error);
  // l | disc is refused
  auto w = validate_weil(IntPolynomial{5, -2, 1}, 5, 1);  // disc -16
  CHECK_THROWS_AS(full_embedding_degree(w, 2), Error);
}

TEST_CASE("type IV: full equals embedding degree for l not dividing q(q-1)") {
  auto w = validate_weil(IntPolynomial{125, -10, 1}, 5, 3);
  const Int order = group_order(w);  // 116 = 4 * 29
  int seen = 0;
  for (std::uint64_t l = 3; l < 200; l = arith::next_prime(l + 1)) {
    if (!mpz_divisible_ui_p(order.get_mpz_t(), l) || l == 5 || 124 % l == 0) continue;
    if (mpz_divisible_ui_p(Int(discriminant(w.min_poly)).get_mpz_t(), l)) continue;
    CHECK(full_embedding_degree(w, l) == embedding_degree(w, l));
    ++seen;
  }
  CHECK(seen >= 1);
}

TEST_CASE("routes agree with brute force") {
  std::mt19937_64 rng(17);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  int n = 0;
  for (int t = 0; t < 400 && n < 150; ++t) {
    const long p = primes[rng() % 6];
    const long a = static_cast<long>(rng() % static_cast<std::uint64_t>(4 * std::sqrt(double(p)))) - static_cast<long>(2 * std::sqrt(double(p)));
    if (a * a >= 4 * p || a % p == 0) continue;
    auto w = validate_weil(IntPolynomial{p, -a, 1}, p, 1);
    const std::uint64_t l = arith::next_prime(3 + rng() % 60);
    if (static_cast<long>(l) == p) continue;
    if (mpz_divisible_ui_p(Int(discriminant(w.min_poly)).get_mpz_t(), l)) continue;
    const auto e = full_embedding_degree(w, l);
    CHECK(e == brute_matrix_order(w.min_poly, l));
    const auto roots = roots_mod(w.min_poly, l);
    if (roots.size() == 2) CHECK(e == arith::lcm_u64(brute_order(roots[0], l), brute_order(roots[1], l)));
    ++n;
  }
  CHECK(n > 100);
}

TEST_CASE("exponents") {
  auto w = validate_weil(IntPolynomial{9, 3, 1, 1, 1}, 3, 1);
  for (std::uint64_t l : {13ull, 37ull, 61ull, 73ull}) {
    if (mpz_divisible_ui_p(Int(discriminant(w.min_poly)).get_mpz_t(), l)) continue;
    for (long e : {2, 3, 6}) {
      const auto a = full_embedding_degree_by_factors(w.min_poly, l, e);
      const auto b = full_embedding_degree_by_matrix(w.min_poly, l, e);
      CHECK(a == b);
      // pi^e has matrix C^e: compare against the expanded power
      CHECK(a == full_embedding_degree_by_matrix(IntMatrix::companion(w.min_poly).pow(e).characteristic_polynomial(), l));
    }
  }
}

TEST_CASE("embedding certificates verify and detect tampering") {
  auto w = validate_weil(IntPolynomial{81, 0, 0, 0, 1}, 3, 2);
  auto cert = certify_embedding(w, 41);
  CHECK(cert.embedding_degree == 4);
  CHECK(cert.designated_residue == 1);
  CHECK(verify_embedding(cert).empty());
  auto bad = cert;
  bad.group_order = *bad.group_order - 1;
  CHECK_FALSE(verify_embedding(bad).empty());
  bad = cert;
  bad.full_embedding_degree += 1;
  CHECK_FALSE(verify_embedding(bad).empty());
  bad = cert;
  bad.w.min_poly = IntPolynomial{81, 0, 1, 0, 1};
  CHECK_FALSE(verify_embedding(bad).empty());
}
