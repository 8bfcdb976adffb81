#pragma once

// Exact integer and modular arithmetic kernel.

#include "avforge/int_poly.hpp"
#include "avforge/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace avforge::arith {

struct PrimePower {
  Int prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = prod prime^exponent, primes strictly increasing.
struct Factorization {
  Int value;
  std::vector<PrimePower> factors;

  Int recompose() const;
  std::vector<Int> primes() const;
};

struct PrimalityConfig {
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  int rounds = 64; // strong-probable-prime rounds above 2^64
};

struct FactorBudget {
  // Pollard-Brent iterations allowed per composite cofactor; ~2^26 steps
  // reaches prime factors around 2^48-2^52.
  std::uint64_t rho_iterations = std::uint64_t{1} << 26;
  std::uint64_t trial_bound = 1u << 16;
};

// word-sized helpers (modulus < 2^63)
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// base^exp mod modulus in [0, modulus); modulus < 2 is a domain error.
Int mod_pow(const Int& base, const Int& exp, const Int& modulus);
/// Least nonnegative residue.
Int mod(const Int& a, const Int& m);

bool is_prime(const Int& n, const PrimalityConfig& config = {});
bool is_prime_u64(std::uint64_t n);
/// Least prime >= n.
std::uint64_t next_prime(std::uint64_t n);

Factorization factor(const Int& n, const FactorBudget& budget = {});
/// Factorization of l^k - 1 assembled from the cyclotomic pieces Phi_d(l), d | k.
Factorization factor_power_minus_one(const Int& l, unsigned k, const FactorBudget& budget = {});
Factorization merge(const Factorization& a, const Factorization& b);

std::vector<Int> divisors(const Factorization& f);
Int euler_phi(const Int& n, const FactorBudget& budget = {});
std::uint64_t euler_phi_u64(std::uint64_t n);

/// Order of an element in a group of exponent dividing `exponent`:
/// `is_identity_at(e)` reports whether g^e is the identity. Descends through
/// the prime divisors of the exponent.
Int order_by_descent(const Factorization& exponent, const std::function<bool(const Int&)>& is_identity_at);

/// Smallest d >= 1 with a^d = 1 mod modulus; gcd(a, modulus) must be 1.
Int multiplicative_order(const Int& a, const Int& modulus, const FactorBudget& budget = {});
/// Order of a modulo a word-sized prime l.
std::uint64_t multiplicative_order_prime(std::uint64_t a, std::uint64_t l);

/// Phi_n(X) by iterated exact division of X^n - 1 by Phi_d, d | n, d < n.
IntPolynomial cyclotomic_poly(unsigned n);

} // namespace avforge::arith
