#include "avforge/matrix.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"

namespace avforge {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::companion(const IntPolynomial& monic) {
  require(monic.is_monic() && monic.degree() >= 1, "companion matrix needs a monic polynomial of degree >= 1");
  const std::size_t n = static_cast<std::size_t>(monic.degree());
  IntMatrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -monic.coeff(i);
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  require(a.cols_ == b.rows_, "matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix IntMatrix::pow(const Int& e) const {
  require(rows_ == cols_, "pow needs a square matrix");
  require(e >= 0, "negative matrix power");
  IntMatrix result = identity(rows_), base = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
  }
  return result;
}

Int IntMatrix::determinant() const {
  require(rows_ == cols_, "determinant needs a square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m(*this);
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

// Berkowitz: division-free, exact over Z.
IntPolynomial IntMatrix::characteristic_polynomial() const {
  require(rows_ == cols_, "characteristic polynomial needs a square matrix");
  const std::size_t n = rows_;
  if (n == 0) return IntPolynomial::constant(1);
  // coefficients stored highest degree first while iterating
  std::vector<Int> v{Int(1), Int(-(*this)(0, 0))};
  for (std::size_t r = 1; r < n; ++r) {
    // partition: M_r = [[A, R], [C, a_rr]] with A the leading r×r block
    std::vector<Int> col(r), row(r);
    for (std::size_t i = 0; i < r; ++i) {
      col[i] = (*this)(i, r);
      row[i] = (*this)(r, i);
    }
    // Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
    std::vector<Int> t(r + 2);
    t[0] = 1;
    t[1] = -(*this)(r, r);
    std::vector<Int> ac = col;
    for (std::size_t k = 2; k < r + 2; ++k) {
      Int dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += row[i] * ac[i];
      t[k] = -dot;
      std::vector<Int> next(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) next[i] += (*this)(i, j) * ac[j];
      ac = std::move(next);
    }
    std::vector<Int> w(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < v.size(); ++j) w[i] += t[i - j] * v[j];
    v = std::move(w);
  }
  std::vector<Int> coeffs(v.rbegin(), v.rend());
  return IntPolynomial(std::move(coeffs));
}

std::optional<Int> IntMatrix::scalar_value() const {
  if (rows_ != cols_ || rows_ == 0) return std::nullopt;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && (*this)(i, j) != 0) return std::nullopt;
      if (i == j && (*this)(i, j) != (*this)(0, 0)) return std::nullopt;
    }
  return (*this)(0, 0);
}

// ---------------------------------------------------------------------------

ModMatrix::ModMatrix(const IntMatrix& m, std::uint64_t modulus) : n_(m.rows()), mod_(modulus), data_(n_ * n_) {
  require(m.rows() == m.cols(), "ModMatrix needs a square matrix");
  const Int l = from_u64(modulus);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), m(i, j).get_mpz_t(), l.get_mpz_t());
      data_[i * n_ + j] = to_u64(r);
    }
}

ModMatrix ModMatrix::identity(std::size_t n, std::uint64_t modulus) {
  ModMatrix m(n, modulus);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % modulus;
  return m;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  require(a.n_ == b.n_ && a.mod_ == b.mod_, "ModMatrix mismatch");
  ModMatrix c(a.n_, a.mod_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = 0; j < a.n_; ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < a.n_; ++k) {
        acc += static_cast<unsigned __int128>(a(i, k)) * b(k, j);
        acc %= a.mod_;
      }
      c(i, j) = static_cast<std::uint64_t>(acc);
    }
  return c;
}

ModMatrix ModMatrix::pow(const Int& e) const {
  require(e >= 0, "negative matrix power");
  ModMatrix result = identity(n_, mod_), base = *this;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
  }
  return result;
}

bool ModMatrix::is_identity() const { return *this == identity(n_, mod_); }

std::uint64_t ModMatrix::determinant() const {
  std::vector<std::uint64_t> m(data_);
  std::uint64_t det = 1;
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    while (piv < n_ && m[piv * n_ + k] == 0) ++piv;
    if (piv == n_) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[k * n_ + j], m[piv * n_ + j]);
      det = (mod_ - det) % mod_;
    }
    const std::uint64_t pv = m[k * n_ + k];
    det = arith::mul_mod(det, pv, mod_);
    const std::uint64_t inv = arith::inverse_mod(pv, mod_);
    for (std::size_t i = k + 1; i < n_; ++i) {
      const std::uint64_t f = arith::mul_mod(m[i * n_ + k], inv, mod_);
      if (f == 0) continue;
      for (std::size_t j = k; j < n_; ++j) {
        const std::uint64_t s = arith::mul_mod(f, m[k * n_ + j], mod_);
        m[i * n_ + j] = (m[i * n_ + j] + mod_ - s) % mod_;
      }
    }
  }
  return det;
}

// ---------------------------------------------------------------------------

std::optional<std::vector<Rational>> first_linear_relation(const std::vector<std::vector<Rational>>& vectors) {
  // Incremental echelon form; each basis row remembers its expression in the inputs.
  struct Row {
    std::vector<Rational> value;
    std::vector<Rational> combo;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    std::vector<Rational> v = vectors[k];
    std::vector<Rational> combo(vectors.size());
    combo[k] = 1;
    for (const auto& row : basis) {
      const Rational f = v[row.pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row.value[j];
      for (std::size_t j = 0; j < combo.size(); ++j) combo[j] -= f * row.combo[j];
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && v[pivot] == 0) ++pivot;
    if (pivot == v.size()) {
      combo.resize(k + 1);
      return combo;
    }
    const Rational inv = 1 / v[pivot];
    for (auto& x : v) x *= inv;
    for (auto& x : combo) x *= inv;
    // keep rows reduced against the new pivot
    for (auto& row : basis) {
      const Rational f = row.value[pivot];
      if (f == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) row.value[j] -= f * v[j];
      for (std::size_t j = 0; j < combo.size(); ++j) row.combo[j] -= f * combo[j];
    }
    basis.push_back({std::move(v), std::move(combo), pivot});
  }
  return std::nullopt;
}

} // namespace avforge
