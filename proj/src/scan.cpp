#include "scan.hpp"

#include "avforge/arith.hpp"
#include "avforge/prime_field.hpp"

#include <algorithm>

namespace avforge::scan {

IntPolynomial scaled_cyclotomic(unsigned m, const Int& s) {
  std::vector<Int> c(arith::cyclotomic_poly(m).coefficients());
  const std::size_t n = c.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) c[i] *= pow_int(s, n - i);
  return IntPolynomial(std::move(c));
}

std::vector<std::uint64_t> split_roots(const IntPolynomial& poly, const Int& q, const Int& disc, std::uint64_t l) {
  if (!arith::is_prime_u64(l)) return {};
  const Int lz = from_u64(l);
  if (arith::mod(q, lz) == 0 || arith::mod(disc, lz) == 0 || arith::mod(poly.leading(), lz) == 0) return {};
  auto roots = roots_mod(poly, l);
  if (roots.size() != static_cast<std::size_t>(poly.degree())) return {};
  return roots;
}

std::uint64_t power_order(std::uint64_t x, std::uint64_t e, std::uint64_t l) {
  return arith::multiplicative_order_prime(arith::pow_mod(x % l, e, l), l);
}

std::optional<BaseChangeLabels> base_change_labels(const std::vector<std::uint64_t>& roots, const Int& q, std::uint64_t l,
                                                   unsigned m, unsigned n) {
  const std::uint64_t mn = std::uint64_t{m} * n;
  if (roots.size() < 3 || (l - 1) % mn != 0) return std::nullopt;
  const std::uint64_t e = (l - 1) / mn;
  const std::uint64_t qm = to_u64(arith::mod(q, from_u64(l)));
  for (std::uint64_t r : roots) {
    const std::uint64_t r_bar = arith::mul_mod(qm, arith::inverse_mod(r, l), l);
    if (r_bar == r || !std::binary_search(roots.begin(), roots.end(), r_bar)) continue;
    if (power_order(r, e, l) != 1 || power_order(r_bar, e, l) != n) continue;
    for (std::uint64_t r1 : roots) {
      if (r1 == r || r1 == r_bar) continue;
      if (power_order(r1, e, l) == mn) return BaseChangeLabels{r, r_bar, r1};
    }
  }
  return std::nullopt;
}

std::optional<KummerLabels> kummer_labels(const std::vector<std::uint64_t>& roots, const Int& q, std::uint64_t l,
                                          unsigned n) {
  if ((l - 1) % n != 0) return std::nullopt;
  const std::uint64_t e = (l - 1) / n;
  const std::uint64_t qm = to_u64(arith::mod(q, from_u64(l)));
  for (std::uint64_t r : roots) {
    const std::uint64_t r_bar = arith::mul_mod(qm, arith::inverse_mod(r, l), l);
    if (!std::binary_search(roots.begin(), roots.end(), r_bar)) continue;
    if (power_order(r, e, l) == 1 && power_order(r_bar, e, l) == n) return KummerLabels{r, r_bar};
  }
  return std::nullopt;
}

} // namespace avforge::scan
