#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avforge/prime_field.hpp"

#include <random>
#include <set>

using namespace avforge;

namespace {

std::vector<std::uint64_t> brute_roots(const IntPolynomial& p, std::uint64_t l) {
  PrimeFieldPoly f(l, p);
  std::vector<std::uint64_t> r;
  for (std::uint64_t x = 0; x < l; ++x)
    if (f.eval(x) == 0) r.push_back(x);
  return r;
}

IntPolynomial random_poly(std::mt19937_64& rng, int deg, long bound) {
  std::vector<Int> c;
  for (int i = 0; i < deg; ++i) c.emplace_back(static_cast<long>(rng() % (2 * bound + 1)) - bound);
  c.emplace_back(1);
  return IntPolynomial(c);
}

} // namespace

TEST_CASE("roots mod l match brute force") {
  std::mt19937_64 rng(11);
  const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 41, 97, 101, 1009};
  for (int i = 0; i < 400; ++i) {
    auto p = random_poly(rng, 1 + static_cast<int>(rng() % 6), 20);
    auto l = primes[rng() % std::size(primes)];
    REQUIRE(roots_mod(p, l) == brute_roots(p, l));
  }
  CHECK(roots_mod(IntPolynomial{125, -10, 1}, 41) == brute_roots(IntPolynomial{125, -10, 1}, 41));
}

TEST_CASE("factorization recomposes into irreducibles") {
  std::mt19937_64 rng(12);
  const std::uint64_t primes[] = {2, 3, 5, 7, 13, 31};
  for (int i = 0; i < 300; ++i) {
    auto a = random_poly(rng, 1 + static_cast<int>(rng() % 4), 9);
    auto b = random_poly(rng, static_cast<int>(rng() % 4), 9);
    auto p = a * a * b * IntPolynomial::constant(3);
    auto l = primes[rng() % std::size(primes)];
    PrimeFieldPoly f(l, p);
    if (f.is_zero()) continue;
    auto fac = factor_mod(f);
    REQUIRE(fac.recompose(l) == f);
    for (const auto& piece : fac.factors) {
      CHECK(piece.factor.leading() == 1);
      CHECK(is_irreducible_mod(piece.factor));
    }
  }
}

TEST_CASE("repeated factors in characteristic l") {
  // (X^3 + 1)^3 over F_3 = (X + 1)^9
  PrimeFieldPoly f(3, IntPolynomial{1, 0, 0, 1}.pow(3));
  auto fac = factor_mod(f);
  REQUIRE(fac.factors.size() == 1);
  CHECK(fac.factors[0].multiplicity == 9);
  CHECK(fac.factors[0].factor == PrimeFieldPoly(3, {1, 1}));
}

TEST_CASE("splitting") {
  CHECK(splits_completely_mod(IntPolynomial{125, -10, 1}, 41) == (brute_roots(IntPolynomial{125, -10, 1}, 41).size() == 2));
  CHECK(splits_completely_mod(IntPolynomial{1, 0, 0, 0, 1}, 17));
  CHECK_FALSE(splits_completely_mod(IntPolynomial{1, 0, 0, 0, 1}, 7));
  auto fac = factor_mod(IntPolynomial{1, 0, 0, 0, 1}, 7);
  CHECK(fac.degree_pattern() == std::vector<int>{2, 2});
}

TEST_CASE("extension field orders") {
  // F_49 = F_7[x]/(x^2 + 1); x has order 4
  FiniteFieldExt f(7, PrimeFieldPoly(7, {1, 0, 1}));
  CHECK(f.group_order() == 48);
  CHECK(f.element_order(f.generator()) == 4);
  // brute force every element of F_49
  for (std::uint64_t a = 0; a < 7; ++a)
    for (std::uint64_t b = 0; b < 7; ++b) {
      if (a == 0 && b == 0) continue;
      PrimeFieldPoly e(7, {a, b});
      Int n = 1;
      PrimeFieldPoly x = f.reduce(e);
      while (!x.is_one()) {
        x = f.reduce(x * e);
        ++n;
      }
      REQUIRE(f.element_order(e) == n);
    }
  CHECK_THROWS(FiniteFieldExt(7, PrimeFieldPoly(7, {-1 + 7, 0, 1})));
}
