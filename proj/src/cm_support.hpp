#pragma once

// Exact reconstruction of number-field elements from certified embeddings.
// Shared by the CM constructions and by certificate verification.

#include "avforge/roots.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace avforge::cm {

/// a·b with the center snapped to 2^-bits.
ComplexBall mul(const ComplexBall& a, const ComplexBall& b, unsigned bits);

/// True when the disk provably avoids 0.
bool excludes_zero(const ComplexBall& b);

/// Tr(x^k) for k < count, x a root of the monic f.
std::vector<Int> power_sums(const IntPolynomial& f, std::size_t count);

/// Unique solution of a nonsingular square system over Q.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b);

/// Power-basis coordinates of the algebraic integer y in Q[x]/(f) whose image
/// under embedding j is values[j]: the integers Tr(y x^k) are pinned from the
/// disks and the trace system is solved exactly. nullopt when a trace is not pinned.
std::optional<std::vector<Rational>> coordinates_from_embeddings(const ComplexEmbeddingSet& f_roots,
                                                                 const std::vector<ComplexBall>& values);

/// Image of a power-basis element under the embedding x -> z.
ComplexBall embed(const std::vector<Rational>& coords, const ComplexBall& z, unsigned bits);

/// Residue at the root x mod l of a power-basis element; l must not divide a denominator.
std::uint64_t residue_at(const std::vector<Rational>& coords, std::uint64_t x, std::uint64_t l);

/// True when each residue pi_res[i] is the product of alpha_res[j] over j in rows[i].
bool type_rows_hold(const std::vector<std::vector<std::size_t>>& rows, const std::vector<std::uint64_t>& alpha_res,
                    const std::vector<std::uint64_t>& pi_res, std::uint64_t l);

} // namespace avforge::cm
