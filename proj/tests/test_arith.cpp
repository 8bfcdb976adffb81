#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/matrix.hpp"

#include <random>

using namespace avforge;
using namespace avforge::arith;

namespace {

std::uint64_t brute_order(std::uint64_t a, std::uint64_t n) {
  std::uint64_t x = a % n;
  for (std::uint64_t d = 1;; ++d) {
    if (x == 1) return d;
    x = x * a % n;
  }
}

bool brute_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace

TEST_CASE("modular exponentiation and orders") {
  CHECK(mod_pow(9, 2, 41) == 40);
  CHECK(multiplicative_order(9, 41) == 4);
  CHECK(multiplicative_order(2, 5) == 4);
  CHECK(multiplicative_order(1, 7) == 1);
  CHECK_THROWS_AS(mod_pow(3, 2, 1), Error);
  CHECK_THROWS_AS(multiplicative_order(6, 9), Error);
}

TEST_CASE("orders agree with brute force") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t n = 2 + rng() % 5000;
    std::uint64_t a = 1 + rng() % (n - 1);
    if (gcd_u64(a, n) != 1) continue;
    CHECK(multiplicative_order(from_u64(a), from_u64(n)) == from_u64(brute_order(a, n)));
    if (brute_prime(n)) CHECK(multiplicative_order_prime(a, n) == brute_order(a, n));
  }
}

TEST_CASE("primality matches trial division") {
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime_u64(n) == brute_prime(n));
  CHECK(is_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
  CHECK_FALSE(is_prime(Int("170141183460469231731687303715884105729")));
  CHECK(next_prime(90) == 97);
}

TEST_CASE("factorization") {
  auto f = factor(82);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0] == PrimePower{2, 1});
  CHECK(f.factors[1] == PrimePower{41, 1});
  CHECK(factor(1).factors.empty());
  const Int big = Int("1000000007") * Int("998244353") * Int("1000000007") * 12;
  auto g = factor(big);
  CHECK(g.recompose() == big);
  for (const auto& pp : g.factors) CHECK(is_prime(pp.prime));
  auto h = factor_power_minus_one(7, 12);
  CHECK(h.recompose() == pow_int(7, 12) - 1);
  CHECK(euler_phi(36) == 12);
  CHECK(divisors(factor(12)) == std::vector<Int>{1, 2, 3, 4, 6, 12});
}

TEST_CASE("factor budget is reported") {
  FactorBudget tiny;
  tiny.rho_iterations = 10;
  const Int semiprime = Int("1000000007") * Int("1000000009");
  try {
    factor(semiprime, tiny);
    FAIL("expected budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(8) == IntPolynomial{1, 0, 0, 0, 1});
  CHECK(cyclotomic_poly(6) == IntPolynomial{1, -1, 1});
  CHECK(cyclotomic_poly(1) == IntPolynomial{-1, 1});
  for (unsigned n = 1; n <= 200; ++n) {
    IntPolynomial prod = IntPolynomial::constant(1);
    for (unsigned d = 1; d <= n; ++d)
      if (n % d == 0) prod = prod * cyclotomic_poly(d);
    REQUIRE(prod == IntPolynomial::monomial(1, n) - IntPolynomial::constant(1));
    REQUIRE(cyclotomic_poly(n).degree() == static_cast<int>(euler_phi_u64(n)));
  }
}

TEST_CASE("polynomial basics") {
  IntPolynomial p{125, -10, 1};
  CHECK(p.to_string() == "X^2 - 10*X + 125");
  CHECK(IntPolynomial::from_csv(p.to_csv()) == p);
  CHECK(discriminant(p) == 100 - 500);
  CHECK(resultant(IntPolynomial{-1, 0, 1}, IntPolynomial{-4, 0, 1}) == 9);
  CHECK(gcd(IntPolynomial{-1, 0, 1}, IntPolynomial{1, 2, 1}) == IntPolynomial{1, 1});
  CHECK(is_squarefree(p));
  CHECK_FALSE(is_squarefree(IntPolynomial{1, 2, 1}));
}

TEST_CASE("matrices") {
  IntPolynomial p{125, -10, 1};
  IntMatrix c = IntMatrix::companion(p);
  CHECK(c.characteristic_polynomial() == p);
  IntPolynomial q{5, -3, 2, 7, 1};
  CHECK(IntMatrix::companion(q).characteristic_polynomial() == q);
  // pi^2 = 10 pi - 125 so C^2 = 10 C - 125 I
  IntMatrix c2 = c * c;
  CHECK(c2(0, 0) == -125);
  CHECK(c.pow(2) == c2);
  CHECK(c.determinant() == 125);
  ModMatrix m(c, 41);
  CHECK(m.determinant() == 125 % 41);
  CHECK(IntMatrix::identity(3).scalar_value() == Int(1));
}
