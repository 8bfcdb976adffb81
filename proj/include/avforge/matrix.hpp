#pragma once

#include "avforge/int_poly.hpp"
#include "avforge/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace avforge {

/// Square or rectangular matrix over Z, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  /// Companion matrix of a monic polynomial; its characteristic polynomial is p.
  static IntMatrix companion(const IntPolynomial& monic);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  IntMatrix pow(const Int& e) const;
  /// Bareiss fraction-free elimination.
  Int determinant() const;
  /// Characteristic polynomial det(X·I - M), monic.
  IntPolynomial characteristic_polynomial() const;
  /// Some c with M == c·I, when M is scalar.
  std::optional<Int> scalar_value() const;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

/// Square matrix over F_l for a word-sized prime l.
class ModMatrix {
public:
  ModMatrix(std::size_t n, std::uint64_t modulus) : n_(n), mod_(modulus), data_(n * n, 0) {}
  ModMatrix(const IntMatrix& m, std::uint64_t modulus);

  static ModMatrix identity(std::size_t n, std::uint64_t modulus);

  std::size_t size() const { return n_; }
  std::uint64_t modulus() const { return mod_; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) = default;

  ModMatrix pow(const Int& e) const;
  bool is_identity() const;
  std::uint64_t determinant() const;

private:
  std::size_t n_;
  std::uint64_t mod_;
  std::vector<std::uint64_t> data_;
};

/// Solve-free rank helper: the first nontrivial rational relation among
/// vectors, i.e. coefficients c_0..c_k (c_k = 1) with sum c_i v_i = 0 where k
/// is the first index at which v_k lies in the span of v_0..v_{k-1}.
std::optional<std::vector<Rational>> first_linear_relation(const std::vector<std::vector<Rational>>& vectors);

} // namespace avforge
