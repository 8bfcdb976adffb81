#pragma once

// Weil q-integers: validation, Newton polygons, Honda-Tate invariants,
// classification, absolute simplicity and twists.

#include "avforge/int_poly.hpp"
#include "avforge/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace avforge {

enum class Classification { Ordinary, Supersingular, TypeIV, Other };
enum class Tristate { Yes, No, Unknown };

std::string to_string(Classification c, unsigned typeiv_d = 0);
const char* to_string(Tristate t);

/// A validated Weil q-integer with q = p^k.
struct WeilNumber {
  IntPolynomial min_poly;
  Int p;
  unsigned k = 1;
  unsigned m_pi = 1;

  Int q() const { return pow_int(p, k); }
  unsigned degree() const { return static_cast<unsigned>(min_poly.degree()); }
  unsigned dim() const { return degree() * m_pi / 2; }
  /// min_poly^m_pi.
  IntPolynomial characteristic_polynomial() const { return min_poly.pow(m_pi); }
  bool is_real() const;
};

struct Slope {
  Rational slope;
  unsigned multiplicity;
  friend bool operator==(const Slope&, const Slope&) = default;
};

struct NewtonPolygon {
  std::vector<Slope> slopes; // ascending

  unsigned total() const;
  bool symmetric() const;
  bool integral_breakpoints() const;
  bool all_equal(const Rational& s) const;
};

struct LocalInvariant {
  std::string place;
  unsigned local_degree;
  Rational slope; // v(pi)/v(q); 0 for the real place
  Rational invariant; // in [0, 1)
};

struct HondaTateReport {
  unsigned dim = 0;
  unsigned center_degree = 0;
  unsigned index = 1;
  std::vector<LocalInvariant> hasse_invariants;
  Classification classification = Classification::Other;
  unsigned typeiv_d = 0; // d for TypeIV(1,d)
  Tristate absolutely_simple = Tristate::Unknown;
  NewtonPolygon polygon;
};

/// Throws InvalidWeil with "not irreducible", "fails q-symmetry" or
/// "root off the circle |z| = √q"; Unsupported when the local invariants at p
/// cannot be read off ("p ramified or divides index — invariants unavailable").
WeilNumber validate_weil(const IntPolynomial& p_poly, const Int& p, unsigned k);

/// Newton polygon of a single copy of the polynomial (slopes v(root)/v(q)).
NewtonPolygon newton_polygon_of(const IntPolynomial& poly, const Int& p, unsigned k);
/// Newton polygon of the abelian variety: multiplicities scaled by m_pi.
NewtonPolygon newton_polygon(const WeilNumber& w);

/// Hasse invariants at the places above p (and the real places of a real pi).
/// Returns nullopt with `reason` when they are not computable by this method.
std::optional<std::vector<LocalInvariant>> local_invariants(const IntPolynomial& poly, const Int& p, unsigned k,
                                                            std::string* reason = nullptr);

/// Invariants of a non-real supersingular pi from pi^2/q = zeta_M: every place
/// over p has invariant (local degree)/2, odd local degree needing p ∤ M.
std::vector<LocalInvariant> supersingular_invariants(const IntPolynomial& poly, const Int& p, unsigned k);

HondaTateReport honda_tate(const WeilNumber& w);

/// Yes when some Newton slope is j/g in lowest terms (g = dim >= 3); otherwise Unknown.
Tristate is_absolutely_simple_by_slope(const WeilNumber& w);
/// For ordinary w: the characteristic polynomial of pi^M stays irreducible for
/// every M with phi(M) <= 2 deg^2, so no base change splits the variety.
bool absolutely_simple_by_powers(const WeilNumber& w);

bool supersingular_test(const WeilNumber& w);
/// Least N with pi^N rational (companion matrix power is scalar), searching
/// phi(N) <= 2 deg; the root-of-unity cross-check for supersingularity.
std::optional<unsigned> rational_power_order(const WeilNumber& w);

struct TwistResult {
  bool twist = false;
  unsigned order = 0; // least witness M when twist
  unsigned phi_bound = 0;
};
/// Least M with phi(M) <= 2 deg1 deg2 such that pi_1^M and pi_2^M are conjugate.
TwistResult twist_test(const WeilNumber& w1, const WeilNumber& w2);

struct SupersingularDimension {
  bool holds = false;
  unsigned order = 0; // root-of-unity order N of pi / sqrt(q)
  unsigned dim = 0;
};
/// Requires supersingular_test(w). Checks dim in {phi(N), phi(N)/2}.
SupersingularDimension supersingular_dimension_check(const WeilNumber& w);

/// Minimal polynomial of pi^e with the k of q^e; throws ExpansionTooLarge over bit_bound.
IntPolynomial power_min_poly(const WeilNumber& w, const Int& e, std::size_t bit_bound);

} // namespace avforge
