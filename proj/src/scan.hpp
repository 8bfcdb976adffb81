#pragma once

// Residue-order predicates shared by the searches and by certificate
// verification. Pure functions of (polynomial, q, l).

#include "avforge/int_poly.hpp"
#include "avforge/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace avforge::scan {

/// s^phi(M) Phi_M(X/s).
IntPolynomial scaled_cyclotomic(unsigned m, const Int& s);

/// Roots of P mod l when l is prime, l ∤ q·disc and P splits into distinct
/// linear factors; empty otherwise.
std::vector<std::uint64_t> split_roots(const IntPolynomial& poly, const Int& q, const Int& disc, std::uint64_t l);

/// Multiplicative order of x^e mod l (x nonzero mod l).
std::uint64_t power_order(std::uint64_t x, std::uint64_t e, std::uint64_t l);

struct BaseChangeLabels {
  std::uint64_t r, r_bar, r1;
};
/// First (r, r1) in lexicographic order with ord(r^e) = 1, ord((q/r)^e) = n and
/// ord(r1^e) = mn, e = (l-1)/mn.
std::optional<BaseChangeLabels> base_change_labels(const std::vector<std::uint64_t>& roots, const Int& q, std::uint64_t l,
                                                   unsigned m, unsigned n);

struct KummerLabels {
  std::uint64_t r, r_bar;
};
/// First root r with ord(r^e) = 1 and ord((q/r)^e) = N, e = (l-1)/N.
std::optional<KummerLabels> kummer_labels(const std::vector<std::uint64_t>& roots, const Int& q, std::uint64_t l,
                                          unsigned n);

} // namespace avforge::scan
