#pragma once

// Group orders, embedding degrees and full embedding (torsion-field) degrees.

#include "avforge/weil.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace avforge {

/// |B(F_q)| = P(1)^m_pi.
Int group_order(const WeilNumber& w);

struct Divisibility {
  bool divides = false;
  std::optional<std::uint64_t> witness; // root r = 1 of P mod l
};
/// Requires l prime, l ∤ q.
Divisibility divides_order(const WeilNumber& w, std::uint64_t l);

/// Order of q^exponent mod l. Requires l prime, l ∤ q, and (for exponent 1) l | |B(F_q)|.
std::uint64_t embedding_degree(const WeilNumber& w, std::uint64_t l, const Int& exponent = 1);

/// Route (a): lcm over irreducible factors h of P mod l of the order of X^exponent in F_l[x]/(h).
Int full_embedding_degree_by_factors(const IntPolynomial& poly, std::uint64_t l, const Int& exponent = 1);
/// Route (b): multiplicative order of C^exponent mod l, C the companion matrix.
Int full_embedding_degree_by_matrix(const IntPolynomial& poly, std::uint64_t l, const Int& exponent = 1);

/// Degree of F_q(B[l]) over F_q for B = B_{pi^exponent} over F_{q^exponent}.
/// Requires l ∤ q·disc(P) ("ramified or index-divisor l unsupported"); both
/// routes are computed and must agree (Verification error otherwise).
std::uint64_t full_embedding_degree(const WeilNumber& w, std::uint64_t l, const Int& exponent = 1);

/// Elliptic case: full embedding degree equals embedding degree.
/// Requires deg 2, dim 1, l | order, l ∤ (q - 1), l ∤ q·disc.
bool koblitz_check(const WeilNumber& w, std::uint64_t l);

/// Embedding data for B_{pi^e} over F_{q^e} (e = exponent, 1 unless symbolic).
struct EmbeddingCertificate {
  WeilNumber w;
  Int exponent = 1;
  std::uint64_t l = 0;
  std::optional<Int> group_order; // absent when symbolic (exponent > 1)
  std::vector<std::uint64_t> residue_roots; // roots of min_poly mod l
  std::uint64_t designated_residue = 0;     // r with r^exponent = 1 mod l
  std::uint64_t embedding_degree = 0;
  std::uint64_t full_embedding_degree = 0;
};

/// Builds and checks the certificate; designated residue is the smallest root
/// whose exponent-th power is 1 mod l. Throws Domain when l does not divide the order.
EmbeddingCertificate certify_embedding(const WeilNumber& w, std::uint64_t l, const Int& exponent = 1);

/// Re-derives every field; returns the list of failed claims (empty when valid).
std::vector<std::string> verify_embedding(const EmbeddingCertificate& cert);

} // namespace avforge
