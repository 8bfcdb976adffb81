#include "avforge/arith.hpp"

#include "avforge/error.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace avforge::arith {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1u) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1u;
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  require(r == 1, "inverse_mod: element not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

Int mod_pow(const Int& base, const Int& exp, const Int& modulus) {
  require(modulus >= 2, "mod_pow: modulus must be >= 2");
  require(exp >= 0, "mod_pow: negative exponent");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

namespace {

bool strong_probable_prime(const Int& n, const Int& base, const Int& d, unsigned s) {
  const Int n1 = n - 1;
  Int x = mod_pow(base, d, n);
  if (x == 1 || x == n1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  std::uint64_t x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

constexpr std::uint64_t kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  // the first twelve primes are a deterministic witness set below 3.3e24
  for (std::uint64_t a : kSmallPrimes)
    if (!strong_probable_prime_u64(n, a, d, s)) return false;
  return true;
}

bool is_prime(const Int& n, const PrimalityConfig& config) {
  if (n < 2) return false;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
  for (std::uint64_t p : kSmallPrimes)
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  Int d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kSmallPrimes)
    if (!strong_probable_prime(n, Int(from_u64(a)), d, s)) return false;
  std::mt19937_64 rng(config.seed);
  const std::size_t words = mpz_sizeinbase(n.get_mpz_t(), 2) / 64 + 2;
  for (int round = 0; round < config.rounds; ++round) {
    Int a = 0;
    for (std::size_t w = 0; w < words; ++w) a = (a << 64) + from_u64(rng());
    a = a % (n - 3) + 2;
    if (!strong_probable_prime(n, a, d, s)) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  if (n <= 2) return 2;
  std::uint64_t c = n | 1u;
  while (!is_prime_u64(c)) c += 2;
  return c;
}

Int Factorization::recompose() const {
  Int v = 1;
  for (const auto& f : factors) v *= pow_int(f.prime, f.exponent);
  return v;
}

std::vector<Int> Factorization::primes() const {
  std::vector<Int> v;
  for (const auto& f : factors) v.push_back(f.prime);
  return v;
}

namespace {

// Pollard-Brent; returns a nontrivial factor or 0 when the budget runs out.
Int rho_split(const Int& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; budget > 0; ++c) {
    Int y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto step = [&](const Int& v) -> Int { return (v * v + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = q * abs(Int(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += lim;
        budget = budget > lim ? budget - lim : 0;
        if (budget == 0 && g == 1) return 0;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        Int diff = abs(Int(x - ys));
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

void factor_into(const Int& n, std::map<Int, unsigned>& out, std::uint64_t& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int d = rho_split(n, budget);
  if (d == 0) fail(ErrorKind::BudgetExceeded, "factorization budget exceeded while factoring " + n.get_str());
  factor_into(d, out, budget);
  factor_into(n / d, out, budget);
}

Factorization from_map(const Int& value, const std::map<Int, unsigned>& m) {
  Factorization f{value, {}};
  for (const auto& [p, e] : m) f.factors.push_back({p, e});
  return f;
}

} // namespace

Factorization factor(const Int& n, const FactorBudget& budget) {
  require(n >= 1, "factor: n must be >= 1");
  std::map<Int, unsigned> m;
  Int rest = n;
  for (std::uint64_t p = 2; p <= budget.trial_bound && rest > 1; p += (p == 2 ? 1 : 2)) {
    if (Int(from_u64(p)) * from_u64(p) > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++m[from_u64(p)];
    }
  }
  std::uint64_t left = budget.rho_iterations;
  factor_into(rest, m, left);
  return from_map(n, m);
}

Factorization merge(const Factorization& a, const Factorization& b) {
  std::map<Int, unsigned> m;
  for (const auto& f : a.factors) m[f.prime] += f.exponent;
  for (const auto& f : b.factors) m[f.prime] += f.exponent;
  return from_map(a.value * b.value, m);
}

Factorization factor_power_minus_one(const Int& l, unsigned k, const FactorBudget& budget) {
  require(l >= 2 && k >= 1, "factor_power_minus_one: need l >= 2, k >= 1");
  Factorization acc{1, {}};
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d) continue;
    Int piece = cyclotomic_poly(d).eval(l);
    acc = merge(acc, factor(piece, budget));
  }
  return acc;
}

std::vector<Int> divisors(const Factorization& f) {
  std::vector<Int> ds{1};
  for (const auto& pe : f.factors) {
    const std::size_t n = ds.size();
    Int pk = 1;
    for (unsigned e = 1; e <= pe.exponent; ++e) {
      pk *= pe.prime;
      for (std::size_t i = 0; i < n; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

Int euler_phi(const Int& n, const FactorBudget& budget) {
  require(n >= 1, "euler_phi: n must be >= 1");
  Factorization f = factor(n, budget);
  Int phi = 1;
  for (const auto& pe : f.factors) phi *= (pe.prime - 1) * pow_int(pe.prime, pe.exponent - 1);
  return phi;
}

std::uint64_t euler_phi_u64(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

Int order_by_descent(const Factorization& exponent, const std::function<bool(const Int&)>& is_identity_at) {
  Int order = exponent.value;
  for (const auto& pe : exponent.factors) {
    for (unsigned i = 0; i < pe.exponent; ++i) {
      Int candidate = order / pe.prime;
      if (!is_identity_at(candidate)) break;
      order = candidate;
    }
  }
  return order;
}

Int multiplicative_order(const Int& a, const Int& modulus, const FactorBudget& budget) {
  require(modulus >= 1, "multiplicative_order: modulus must be positive");
  Int g;
  Int ar = mod(a, modulus);
  mpz_gcd(g.get_mpz_t(), ar.get_mpz_t(), modulus.get_mpz_t());
  require(g == 1, "multiplicative_order: gcd(a, modulus) != 1");
  if (modulus == 1) return 1;
  // group order phi(m); a's order divides it
  Factorization mf = factor(modulus, budget);
  Factorization group{1, {}};
  for (const auto& pe : mf.factors) {
    group = merge(group, factor(pe.prime - 1, budget));
    if (pe.exponent > 1) group = merge(group, Factorization{pow_int(pe.prime, pe.exponent - 1), {{pe.prime, pe.exponent - 1}}});
  }
  return order_by_descent(group, [&](const Int& e) { return mod_pow(ar, e, modulus) == 1; });
}

std::uint64_t multiplicative_order_prime(std::uint64_t a, std::uint64_t l) {
  require(l >= 2, "multiplicative_order_prime: modulus must be >= 2");
  a %= l;
  require(a != 0, "multiplicative_order_prime: a is divisible by l");
  std::uint64_t order = l - 1, m = l - 1;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    while (order % p == 0 && pow_mod(a, order / p, l) == 1) order /= p;
  }
  if (m > 1)
    while (order % m == 0 && pow_mod(a, order / m, l) == 1) order /= m;
  return order;
}

IntPolynomial cyclotomic_poly(unsigned n) {
  require(n >= 1, "cyclotomic_poly: N must be >= 1");
  std::map<unsigned, IntPolynomial> phi;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    IntPolynomial p = IntPolynomial::monomial(1, d) - IntPolynomial::constant(1);
    for (const auto& [e, phi_e] : phi)
      if (d % e == 0) p = p.divide_exact(phi_e);
    phi.emplace(d, std::move(p));
  }
  return phi.at(n);
}

} // namespace avforge::arith
