#pragma once

// Factorization over Z and irreducibility over Q.

#include "avforge/int_poly.hpp"

#include <vector>

namespace avforge {

/// Degree cap for the lift-and-recombine stage.
inline constexpr int kZassenhausMaxDegree = 16;

struct IntFactor {
  IntPolynomial factor; // primitive, positive leading coefficient, irreducible over Q
  unsigned multiplicity;
};

struct IntFactorization {
  Int content; // signed, so that content * prod factor^mult == input
  std::vector<IntFactor> factors;

  IntPolynomial recompose() const;
};

/// Squarefree decomposition over Q, then Hensel lifting modulo a good prime and
/// subset recombination. Throws Unsupported above kZassenhausMaxDegree when a
/// squarefree part is not already proved irreducible by its modular patterns.
IntFactorization factor_over_Z(const IntPolynomial& p);

/// Rational-root test, then factor-degree patterns modulo three good primes,
/// then the full factorization as a fallback.
bool is_irreducible_over_Q(const IntPolynomial& p);

} // namespace avforge
