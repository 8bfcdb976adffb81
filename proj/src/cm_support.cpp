#include "cm_support.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"

namespace avforge::cm {

ComplexBall mul(const ComplexBall& a, const ComplexBall& b, unsigned bits) { return round_center(a * b, bits); }

bool excludes_zero(const ComplexBall& b) { return b.re * b.re + b.im * b.im > b.rad * b.rad; }

std::vector<Int> power_sums(const IntPolynomial& f, std::size_t count) {
  require(f.is_monic(), "power_sums: polynomial must be monic");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  std::vector<Int> s(count, 0);
  // Newton's identities with f = X^n + c_{n-1} X^{n-1} + ... + c_0
  for (std::size_t k = 0; k < count; ++k) {
    if (k == 0) {
      s[0] = static_cast<unsigned long>(n);
      continue;
    }
    Int acc = 0;
    for (std::size_t i = 1; i <= std::min(k, n); ++i) {
      const Int& c = f.coeff(n - i);
      if (i == k)
        acc += Int(static_cast<unsigned long>(k)) * c;
      else
        acc += c * s[k - i];
    }
    s[k] = -acc;
  }
  return s;
}

std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    require(piv < n, "solve: singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = b[i] / a[i][i];
    x[i].canonicalize();
  }
  return x;
}

std::optional<std::vector<Rational>> coordinates_from_embeddings(const ComplexEmbeddingSet& f_roots,
                                                                 const std::vector<ComplexBall>& values) {
  const std::size_t n = f_roots.roots.size();
  const unsigned bits = f_roots.precision_bits + 32;
  std::vector<Rational> traces(n);
  std::vector<ComplexBall> term = values;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexBall sum = ComplexBall::exact(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (k > 0) term[j] = mul(term[j], f_roots.roots[j], bits);
      sum = sum + term[j];
    }
    Int t;
    if (!pins_integer(sum, t)) return std::nullopt;
    traces[k] = t;
  }
  const auto s = power_sums(f_roots.poly, 2 * n);
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) m[k][i] = s[i + k];
  return solve(std::move(m), std::move(traces));
}

ComplexBall embed(const std::vector<Rational>& coords, const ComplexBall& z, unsigned bits) {
  ComplexBall acc = ComplexBall::exact(0);
  for (std::size_t i = coords.size(); i-- > 0;) {
    acc = mul(acc, z, bits);
    acc.re += coords[i];
  }
  return acc;
}

std::uint64_t residue_at(const std::vector<Rational>& coords, std::uint64_t x, std::uint64_t l) {
  const Int m = from_u64(l);
  std::uint64_t acc = 0;
  for (std::size_t k = coords.size(); k-- > 0;) {
    const Int den = arith::mod(coords[k].get_den(), m);
    if (den == 0) fail(ErrorKind::Domain, "l divides a coordinate denominator");
    const std::uint64_t c =
        arith::mul_mod(to_u64(arith::mod(coords[k].get_num(), m)), arith::inverse_mod(to_u64(den), l), l);
    acc = (arith::mul_mod(acc, x, l) + c) % l;
  }
  return acc;
}

bool type_rows_hold(const std::vector<std::vector<std::size_t>>& rows, const std::vector<std::uint64_t>& alpha_res,
                    const std::vector<std::uint64_t>& pi_res, std::uint64_t l) {
  if (rows.size() != pi_res.size()) return false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::uint64_t prod = 1;
    for (std::size_t j : rows[i]) {
      if (j >= alpha_res.size()) return false;
      prod = arith::mul_mod(prod, alpha_res[j], l);
    }
    if (prod != pi_res[i]) return false;
  }
  return true;
}

} // namespace avforge::cm
