#pragma once

// Polynomials over F_l and finite-field extensions F_l[x]/(h).

#include "avforge/arith.hpp"
#include "avforge/int_poly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace avforge {

/// Polynomial over F_l, constant term first, coefficients reduced to [0, l).
class PrimeFieldPoly {
public:
  explicit PrimeFieldPoly(std::uint64_t modulus) : mod_(modulus) {}
  PrimeFieldPoly(std::uint64_t modulus, std::vector<std::uint64_t> coefficients);
  PrimeFieldPoly(std::uint64_t modulus, std::initializer_list<std::uint64_t> coefficients)
      : PrimeFieldPoly(modulus, std::vector<std::uint64_t>(coefficients)) {}
  /// Reduction of an integer polynomial.
  PrimeFieldPoly(std::uint64_t modulus, const IntPolynomial& p);

  static PrimeFieldPoly x(std::uint64_t modulus) { return PrimeFieldPoly(modulus, {0, 1}); }
  static PrimeFieldPoly constant(std::uint64_t modulus, std::uint64_t c) { return PrimeFieldPoly(modulus, {c}); }

  std::uint64_t modulus() const { return mod_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  const std::vector<std::uint64_t>& coefficients() const { return coeffs_; }
  std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  std::uint64_t leading() const { return coeffs_.back(); }

  PrimeFieldPoly monic() const;
  PrimeFieldPoly derivative() const;
  std::uint64_t eval(std::uint64_t x) const;
  std::pair<PrimeFieldPoly, PrimeFieldPoly> divmod(const PrimeFieldPoly& d) const;
  PrimeFieldPoly operator%(const PrimeFieldPoly& d) const { return divmod(d).second; }
  PrimeFieldPoly operator/(const PrimeFieldPoly& d) const { return divmod(d).first; }

  friend PrimeFieldPoly operator+(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
  friend PrimeFieldPoly operator-(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
  friend PrimeFieldPoly operator*(const PrimeFieldPoly& a, const PrimeFieldPoly& b);
  friend bool operator==(const PrimeFieldPoly& a, const PrimeFieldPoly& b) = default;
  /// Deterministic ordering: degree, then coefficients from the top.
  friend bool operator<(const PrimeFieldPoly& a, const PrimeFieldPoly& b);

  /// this^e mod m.
  PrimeFieldPoly pow_mod(const Int& e, const PrimeFieldPoly& m) const;

  std::string to_string() const;

private:
  void trim();
  std::uint64_t mod_;
  std::vector<std::uint64_t> coeffs_;
};

PrimeFieldPoly gcd(PrimeFieldPoly a, PrimeFieldPoly b);

struct ModFactor {
  PrimeFieldPoly factor; // monic irreducible
  unsigned multiplicity;
};

struct ModFactorization {
  std::uint64_t leading = 1; // unit in front
  std::vector<ModFactor> factors;

  PrimeFieldPoly recompose(std::uint64_t modulus) const;
  std::vector<int> degree_pattern() const;
  bool squarefree() const;
};

/// Seed for the equal-degree splitting step; recorded so factorizations are reproducible.
inline constexpr std::uint64_t kDefaultSplitSeed = 0x5eedf00dULL;

/// Full factorization over F_l: squarefree, distinct-degree, then
/// equal-degree splitting with a seeded random step. P must be nonzero mod l.
ModFactorization factor_mod(const PrimeFieldPoly& p, std::uint64_t seed = kDefaultSplitSeed);
ModFactorization factor_mod(const IntPolynomial& p, std::uint64_t l, std::uint64_t seed = kDefaultSplitSeed);

/// All r in [0, l) with P(r) = 0 mod l, ascending. l must not divide lc(P).
std::vector<std::uint64_t> roots_mod(const IntPolynomial& p, std::uint64_t l, std::uint64_t seed = kDefaultSplitSeed);

/// True when P mod l is squarefree and a product of distinct linear factors.
bool splits_completely_mod(const IntPolynomial& p, std::uint64_t l);

bool is_irreducible_mod(const PrimeFieldPoly& h);

/// F_l[x]/(h) for an irreducible h of degree k.
class FiniteFieldExt {
public:
  FiniteFieldExt(std::uint64_t l, PrimeFieldPoly defining);

  std::uint64_t characteristic() const { return l_; }
  int degree() const { return defining_.degree(); }
  const PrimeFieldPoly& defining_poly() const { return defining_; }
  /// l^k - 1.
  Int group_order() const;

  PrimeFieldPoly reduce(const PrimeFieldPoly& x) const { return x % defining_; }
  PrimeFieldPoly generator() const { return reduce(PrimeFieldPoly::x(l_)); }
  PrimeFieldPoly pow(const PrimeFieldPoly& x, const Int& e) const { return x.pow_mod(e, defining_); }

  /// Multiplicative order of a nonzero element.
  Int element_order(const PrimeFieldPoly& x, const arith::FactorBudget& budget = {}) const;

private:
  std::uint64_t l_;
  PrimeFieldPoly defining_;
};

} // namespace avforge
