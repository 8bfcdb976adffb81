#include "avforge/forge.hpp"

#include "avforge/arith.hpp"
#include "avforge/error.hpp"
#include "avforge/number_field.hpp"
#include "avforge/prime_field.hpp"
#include "avforge/zfactor.hpp"
#include "cm_support.hpp"
#include "forge_detail.hpp"
#include "scan.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <set>

namespace avforge {

CMType make_cm_type(const IntPolynomial& l_poly, std::vector<std::size_t> chosen, unsigned precision) {
  require(l_poly.is_monic() && l_poly.degree() >= 2 && l_poly.degree() % 2 == 0,
          "not a CM polynomial: need a monic polynomial of even degree");
  require(is_irreducible_over_Q(l_poly), "not a CM polynomial: not irreducible");
  CMType t{certified_roots(l_poly, precision), {}};
  const std::size_t n = t.embeddings.roots.size();
  require(t.embeddings.nonreal_pairs * 2 == n, "not a CM polynomial: has real roots");
  std::sort(chosen.begin(), chosen.end());
  require(chosen.size() == n / 2, "CM type must pick one embedding from each conjugate pair");
  std::vector<bool> used(n, false);
  for (std::size_t i : chosen) {
    require(i < n, "CM type index out of range");
    require(!used[i] && !used[t.embeddings.conjugate[i]], "CM type must pick one embedding from each conjugate pair");
    used[i] = true;
  }
  t.chosen = std::move(chosen);
  return t;
}

namespace {

// the 2^g CM types, mask bit u picking the conjugate of upper root u
std::vector<std::vector<std::size_t>> all_types(const ComplexEmbeddingSet& e) {
  const std::size_t g = e.nonreal_pairs;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
    std::vector<std::size_t> t;
    for (std::size_t u = 0; u < g; ++u) t.push_back((mask >> u) & 1 ? e.conjugate[u] : u);
    std::sort(t.begin(), t.end());
    out.push_back(std::move(t));
  }
  return out;
}

ComplexBall type_sum(const ComplexEmbeddingSet& e, const std::vector<std::size_t>& type, const IntPolynomial& shape) {
  ComplexBall s = ComplexBall::exact(0);
  for (std::size_t i : type) s = s + evaluate(shape, e.roots[i]);
  return s;
}

// Conjugation of L in the power basis, checked exactly (root of L, involution)
// and numerically (acts as complex conjugation on every embedding).
std::optional<std::vector<Rational>> conjugation(const ComplexEmbeddingSet& e) {
  const std::size_t n = e.roots.size();
  std::vector<ComplexBall> vals(n);
  for (std::size_t j = 0; j < n; ++j) vals[j] = e.roots[e.conjugate[j]];
  auto coords = cm::coordinates_from_embeddings(e, vals);
  if (!coords) return std::nullopt;
  const auto c = NumberFieldElement::from_coordinates(e.poly, *coords);
  const RatPolynomial c_poly(*coords);
  require(evaluate(RatPolynomial(e.poly), c).is_zero() && evaluate(c_poly, c) == NumberFieldElement::generator(e.poly) &&
              !(c == NumberFieldElement::generator(e.poly)),
          "not a CM polynomial: complex conjugation is not an automorphism");
  for (std::size_t j = 0; j < n; ++j)
    if (e.locate(cm::embed(*coords, e.roots[j], e.precision_bits + 32)) != e.conjugate[j]) return std::nullopt;
  return coords;
}

struct Attempt {
  bool precision_ok = true;
  std::optional<ReflexData> data;
};

Attempt try_reflex(const CMType& type, const ComplexEmbeddingSet& e, const IntPolynomial& shape) {
  const unsigned bits = e.precision_bits + 32;
  const auto types = all_types(e);
  std::vector<ComplexBall> sums;
  for (const auto& t : types) sums.push_back(type_sum(e, t, shape));
  // T(X) = prod (X - t) over all CM types, integral by Galois stability
  std::vector<ComplexBall> poly{ComplexBall::exact(1)};
  for (const auto& t : sums) {
    std::vector<ComplexBall> next(poly.size() + 1, ComplexBall::exact(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = next[i + 1] + poly[i];
      next[i] = next[i] - cm::mul(poly[i], t, bits);
    }
    poly = std::move(next);
  }
  std::vector<Int> coeffs(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i)
    if (!pins_integer(poly[i], coeffs[i])) return {false, std::nullopt};
  const IntPolynomial big(coeffs);
  if (!is_squarefree(big)) return {true, std::nullopt};

  const auto fz = factor_over_Z(big);
  // each type sum is a root of exactly one factor
  std::vector<std::size_t> owner(types.size());
  for (std::size_t k = 0; k < types.size(); ++k) {
    std::size_t hits = 0;
    for (std::size_t f = 0; f < fz.factors.size(); ++f) {
      if (cm::excludes_zero(evaluate(fz.factors[f].factor, sums[k]))) continue;
      owner[k] = f;
      ++hits;
    }
    if (hits != 1) return {false, std::nullopt};
  }
  const auto input = std::find(types.begin(), types.end(), type.chosen) - types.begin();
  const std::size_t fi = owner[static_cast<std::size_t>(input)];

  ReflexData r;
  r.reflex_poly = fz.factors[fi].factor;
  r.generator_shape = shape;
  r.reflex_embeddings = certified_roots(r.reflex_poly, e.precision_bits);
  const std::size_t deg = r.reflex_embeddings.roots.size();
  r.types.assign(deg, {});
  for (std::size_t k = 0; k < types.size(); ++k) {
    if (owner[k] != fi) continue;
    const std::size_t j = r.reflex_embeddings.locate(sums[k]);
    if (j == deg || !r.types[j].empty()) return {false, std::nullopt};
    r.types[j] = types[k];
    if (static_cast<std::ptrdiff_t>(k) == input) r.designated = j;
  }
  for (const auto& t : r.types)
    if (t.empty()) return {false, std::nullopt};
  return {true, std::move(r)};
}

} // namespace

ReflexData build_reflex(const CMType& type) {
  const std::vector<IntPolynomial> shapes = {
      IntPolynomial{0, 1}, IntPolynomial{0, 1, 1}, IntPolynomial{0, 2, 1}, IntPolynomial{0, 1, 0, 1}, IntPolynomial{0, 3, 1, 1}};
  ComplexEmbeddingSet e = type.embeddings;
  for (;;) {
    bool need_precision = false;
    auto conj = conjugation(e);
    if (conj) {
      for (const auto& shape : shapes) {
        Attempt a = try_reflex(type, e, shape);
        if (!a.precision_ok) {
          need_precision = true;
          break;
        }
        if (a.data) {
          a.data->conjugation = *conj;
          return std::move(*a.data);
        }
      }
      if (!need_precision) fail(ErrorKind::Unsupported, "build_reflex: no generator shape separates the CM types");
    }
    if (e.precision_bits * 2 > kMaxPrecisionBits) fail(ErrorKind::PrecisionExhausted, "precision exhausted in build_reflex");
    e = refine(e, e.precision_bits * 2);
  }
}

Json to_json(const ReflexData& r) {
  Json j;
  j["reflex_poly"] = to_json(r.reflex_poly);
  j["generator_shape"] = to_json(r.generator_shape);
  j["types"] = r.types;
  j["designated"] = r.designated;
  Json c = Json::array();
  for (const auto& v : r.conjugation) c.push_back(to_json(v));
  j["conjugation"] = c;
  return j;
}

namespace {

std::optional<std::vector<Rational>> type_norm_at(const ComplexEmbeddingSet& l_roots, const ComplexEmbeddingSet& r_roots,
                                                  const ReflexData& reflex, const IntPolynomial& alpha) {
  const unsigned bits = std::min(l_roots.precision_bits, r_roots.precision_bits) + 32;
  std::vector<ComplexBall> at(r_roots.roots.size());
  for (std::size_t j = 0; j < at.size(); ++j) at[j] = round_center(evaluate(alpha, r_roots.roots[j]), bits);
  std::vector<ComplexBall> vals(l_roots.roots.size(), ComplexBall::exact(1));
  for (std::size_t j = 0; j < reflex.types.size(); ++j)
    for (std::size_t i : reflex.types[j]) vals[i] = cm::mul(vals[i], at[j], bits);
  return cm::coordinates_from_embeddings(l_roots, vals);
}

} // namespace

std::vector<Rational> reflex_type_norm(const CMType& type, const ReflexData& reflex, const IntPolynomial& alpha) {
  ComplexEmbeddingSet l_roots = type.embeddings;
  ComplexEmbeddingSet r_roots = reflex.reflex_embeddings;
  for (;;) {
    if (auto c = type_norm_at(l_roots, r_roots, reflex, alpha)) return *c;
    const unsigned next = std::max(l_roots.precision_bits, r_roots.precision_bits) * 2;
    if (next > kMaxPrecisionBits) fail(ErrorKind::PrecisionExhausted, "precision exhausted in reflex_type_norm");
    l_roots = refine(l_roots, next);
    r_roots = refine(r_roots, next);
  }
}

namespace {

// Visits every a in Z^r with max|a_i| = box: grouped by the first coordinate
// reaching the box and its sign, then odometer order.
template <class Visit>
void for_each_on_shell(std::size_t r, unsigned box, Visit visit) {
  const long b = static_cast<long>(box);
  std::vector<long> a(r, 0);
  if (b == 0) {
    visit(a);
    return;
  }
  for (std::size_t ext = 0; ext < r; ++ext) {
    for (long sign : {-1L, 1L}) {
      auto lo = [&](std::size_t i) { return i < ext ? -(b - 1) : -b; };
      auto hi = [&](std::size_t i) { return i < ext ? b - 1 : b; };
      for (std::size_t i = 0; i < r; ++i) a[i] = lo(i);
      a[ext] = sign * b;
      for (;;) {
        visit(a);
        std::size_t i = r;
        while (i-- > 0) {
          if (i == ext) continue;
          if (a[i] < hi(i)) {
            ++a[i];
            break;
          }
          a[i] = lo(i);
        }
        if (i == static_cast<std::size_t>(-1)) break;
      }
    }
  }
}

struct Candidate {
  Int p;
  Int norm;
  IntPolynomial alpha;
};

struct CMSearch {
  const CMType& type;
  const RunConfig& config;
  ReflexData reflex;
  Int reflex_disc;
  std::uint64_t examined = 0;
  std::set<std::string> seen; // isogeny classes already tried

  CMSearch(const CMType& t, const RunConfig& c) : type(t), config(c), reflex(build_reflex(t)) {
    reflex_disc = discriminant(reflex.reflex_poly);
  }

  std::vector<std::complex<double>> approx_roots() const {
    std::vector<std::complex<double>> t;
    for (const auto& z : reflex.reflex_embeddings.roots) t.push_back(z.approx());
    return t;
  }

  // Screens a generator by its double-precision norm, then exactly.
  std::optional<Candidate> consider(const std::vector<long>& a, const std::vector<std::complex<double>>& t,
                                    const std::function<bool(std::uint64_t)>& accept_p) {
    bool nonconstant = false;
    for (std::size_t i = 1; i < a.size(); ++i) nonconstant |= a[i] != 0;
    if (!nonconstant) return std::nullopt;
    double approx = 1;
    for (const auto& z : t) {
      std::complex<double> v = 0;
      for (std::size_t i = a.size(); i-- > 0;) v = v * z + static_cast<double>(a[i]);
      approx *= std::abs(v);
    }
    if (approx > static_cast<double>(config.p_max) * (1 + 1e-9) + 1 || approx < 1.5) return std::nullopt;
    if (++examined > config.candidate_budget)
      fail(ErrorKind::BudgetExceeded, "search budget exhausted: generator candidates exceed candidate_budget");
    const auto rounded = static_cast<std::uint64_t>(std::llround(approx));
    if (!arith::is_prime_u64(rounded) || !accept_p(rounded)) return std::nullopt;
    IntPolynomial alpha(std::vector<Int>(a.begin(), a.end()));
    const Int norm = resultant(reflex.reflex_poly, alpha);
    const Int p = abs(norm);
    if (p < 2 || p > from_u64(config.p_max) || !arith::is_prime(p) ||
        mpz_divisible_p(reflex_disc.get_mpz_t(), p.get_mpz_t()) || !splits_completely_mod(reflex.reflex_poly, to_u64(p)))
      return std::nullopt;
    return Candidate{p, norm, alpha};
  }

  // Generators on the shell max|a_i| = box of Z[t], in shell order; sorted by p afterwards.
  std::vector<Candidate> shell(unsigned box, const std::function<bool(std::uint64_t)>& accept_p) {
    const auto t = approx_roots();
    std::vector<Candidate> out;
    for_each_on_shell(t.size(), box, [&](const std::vector<long>& a) {
      if (auto c = consider(a, t, accept_p)) out.push_back(std::move(*c));
    });
    std::stable_sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) { return x.p < y.p; });
    return out;
  }

  // pi = Nm_Psi(alpha) with exact checks; nullopt when pi is not ordinary or already seen
  std::optional<std::pair<WeilNumber, std::vector<Rational>>> weil_of(const Candidate& cand) {
    const auto coords = reflex_type_norm(type, reflex, cand.alpha);
    const IntPolynomial& lp = type.embeddings.poly;
    const auto pi = NumberFieldElement::from_coordinates(lp, coords);
    const auto conj_x = NumberFieldElement::from_coordinates(lp, reflex.conjugation);
    const auto pi_bar = evaluate(RatPolynomial(std::vector<Rational>(coords)), conj_x);
    if (!(pi * pi_bar == NumberFieldElement::rational(lp, Rational(cand.p))))
      fail(ErrorKind::Verification, "reflex type norm: pi * conj(pi) != p");
    const IntPolynomial mp = minimal_polynomial(pi);
    if (mp.degree() < lp.degree())
      fail(ErrorKind::Domain, "pi lands in a strict CM subfield (degree " + std::to_string(mp.degree()) +
                                  "); choose a primitive CM type");
    // conjugate Weil numbers share every invariant
    if (!seen.insert(mp.to_csv()).second) return std::nullopt;
    const WeilNumber w = validate_weil(mp, cand.p, 1);
    if (honda_tate(w).classification != Classification::Ordinary) return std::nullopt;
    return std::make_pair(w, coords);
  }

  Json witness(const Candidate& cand, const std::vector<Rational>& coords) const {
    Json j;
    j["reflex"] = to_json(reflex);
    j["alpha"] = to_json(cand.alpha);
    j["alpha_norm"] = to_json(cand.norm);
    Json pc = Json::array();
    for (const auto& v : coords) pc.push_back(to_json(v));
    j["pi"] = pc;
    return j;
  }
};

Json cm_inputs(const CMType& type) {
  Json j;
  j["L_poly"] = to_json(type.embeddings.poly);
  j["cm_type"] = type.chosen;
  return j;
}

} // namespace

ConstructionCertificate construct_ordinary_cm(const CMType& type, unsigned n, const RunConfig& config) {
  require(n >= 1, "construct_ordinary_cm: N must be positive");
  require(type.embeddings.nonreal_pairs <= 3, "construct_ordinary_cm: desk scale is g <= 3");
  CMSearch search(type, config);
  const IntPolynomial& f = search.reflex.reflex_poly;
  for (unsigned box = 1; box <= config.norm_box_max; ++box) {
    for (const auto& cand : search.shell(box, [](std::uint64_t) { return true; })) {
      auto found = search.weil_of(cand);
      if (!found) continue;
      const WeilNumber& w = found->first;
      const Int disc = discriminant(w.min_poly) * search.reflex_disc;
      std::uint64_t l_candidates = 0;
      for (std::uint64_t l = n + 1; l <= config.l_max; l += n) {
        if (!arith::is_prime_u64(l)) continue;
        ++l_candidates;
        const auto roots = scan::split_roots(f, cand.p, disc, l);
        if (roots.empty()) continue;
        const std::uint64_t e = (l - 1) / n;
        std::vector<std::uint64_t> residues, orders;
        for (std::uint64_t s : roots) {
          const std::uint64_t a = to_u64(arith::mod(cand.alpha.eval(from_u64(s)), from_u64(l)));
          residues.push_back(a);
          orders.push_back(scan::power_order(a, e, l));
        }
        // one conjugate of alpha of order N, all others trivial
        std::size_t designated = roots.size();
        bool rest_trivial = true;
        for (std::size_t j = 0; j < roots.size(); ++j) {
          if (orders[j] == n && designated == roots.size())
            designated = j;
          else if (orders[j] != 1)
            rest_trivial = false;
        }
        if (designated == roots.size() || !rest_trivial) continue;

        Json inputs = cm_inputs(type);
        inputs["N"] = n;
        ConstructionCertificate c = detail::start(ConstructionKind::OrdinaryCM, inputs, config, w);
        c.exponent = from_u64(e);
        c.embedding = certify_embedding(w, l, c.exponent);
        if (c.embedding->embedding_degree != n)
          fail(ErrorKind::Verification, "construct_ordinary_cm: embedding degree differs from N");
        c.expanded_min_poly = detail::try_expand(w, c.exponent, config);
        c.construction = search.witness(cand, found->second);
        c.construction["kummer"] = {{"reflex_roots_mod_l", roots},
                                    {"alpha_residues", residues},
                                    {"designated", designated},
                                    {"orders", orders},
                                    {"l_candidates", l_candidates}};
        c.trace.candidates_examined = search.examined;
        return c;
      }
    }
  }
  fail(ErrorKind::BudgetExceeded, "no split p with principal degree-one prime found in budget");
}

namespace {

// Reduction at l: roots of L and of the reflex field mod l, the conjugation
// on the L roots, and the type norm as a multiplicative pattern of residues.
struct ResidueFrame {
  std::vector<std::uint64_t> l_roots, reflex_roots;
  std::vector<std::size_t> conj;              // x_conj[i] = c(x_i)
  std::vector<std::vector<std::size_t>> rows; // pi(x_i) = prod over j in rows[i] of alpha(s_j)
};

std::vector<std::uint64_t> residues_at(const IntPolynomial& a, const std::vector<std::uint64_t>& roots, std::uint64_t l) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : roots) out.push_back(PrimeFieldPoly(l, a).eval(s));
  return out;
}

std::vector<std::uint64_t> residues_at(const std::vector<Rational>& coords, const std::vector<std::uint64_t>& roots,
                                       std::uint64_t l) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : roots) out.push_back(cm::residue_at(coords, x, l));
  return out;
}

bool has_zero(const std::vector<std::uint64_t>& v) { return std::find(v.begin(), v.end(), 0) != v.end(); }

ResidueFrame residue_frame(const CMType& type, const ReflexData& reflex, std::uint64_t l) {
  const IntPolynomial& lp = type.embeddings.poly;
  if (!splits_completely_mod(lp, l) || !splits_completely_mod(reflex.reflex_poly, l))
    fail(ErrorKind::Domain, "l must split completely in L and in its reflex field");
  ResidueFrame fr;
  fr.l_roots = roots_mod(lp, l);
  fr.reflex_roots = roots_mod(reflex.reflex_poly, l);
  for (std::uint64_t c : residues_at(reflex.conjugation, fr.l_roots, l))
    fr.conj.push_back(static_cast<std::size_t>(std::find(fr.l_roots.begin(), fr.l_roots.end(), c) - fr.l_roots.begin()));

  // the pattern is learned from sample generators t + k and must be unique
  std::vector<std::vector<std::uint64_t>> alpha_res, pi_res;
  for (long k = 1; alpha_res.size() < 8 && k < 256; ++k) {
    const IntPolynomial alpha({Int(k), Int(1)});
    auto ar = residues_at(alpha, fr.reflex_roots, l);
    auto pr = residues_at(reflex_type_norm(type, reflex, alpha), fr.l_roots, l);
    if (has_zero(ar) || has_zero(pr)) continue;
    alpha_res.push_back(std::move(ar));
    pi_res.push_back(std::move(pr));
  }
  const std::size_t r = fr.reflex_roots.size();
  for (std::size_t i = 0; i < fr.l_roots.size(); ++i) {
    std::vector<std::vector<std::size_t>> fits;
    for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t j = 0; j < r; ++j)
        if (mask >> j & 1) subset.push_back(j);
      bool ok = true;
      for (std::size_t s = 0; ok && s < alpha_res.size(); ++s) {
        std::uint64_t prod = 1;
        for (std::size_t j : subset) prod = arith::mul_mod(prod, alpha_res[s][j], l);
        ok = prod == pi_res[s][i];
      }
      if (ok) fits.push_back(std::move(subset));
    }
    if (fits.size() != 1) fail(ErrorKind::Verification, "type norm pattern mod l is not determined by the samples");
    fr.rows.push_back(std::move(fits[0]));
  }
  return fr;
}

std::uint64_t primitive_root(std::uint64_t l) {
  for (std::uint64_t g = 2;; ++g)
    if (arith::multiplicative_order_prime(g, l) == l - 1) return g;
}

// Residue tuples for alpha, inside the subgroup of order K for the least K in
// (mn, 2mn, 4mn) that admits one, whose type norm has distinct residues,
// p of order n, some residue 1 and residue orders with lcm mn.
// Lexicographic in the exponents.
std::vector<std::vector<std::uint64_t>> residue_targets(const ResidueFrame& fr, std::uint64_t l, unsigned m, unsigned n) {
  const std::uint64_t mn = std::uint64_t{m} * n;
  const std::size_t r = fr.reflex_roots.size();
  const std::uint64_t g = primitive_root(l);
  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t k : {mn, 2 * mn, 4 * mn}) {
    if ((l - 1) % k != 0 || std::pow(static_cast<double>(k), static_cast<double>(r)) > 4e6) continue;
    const std::uint64_t h = arith::pow_mod(g, (l - 1) / k, l);
    std::vector<std::uint64_t> powers(k, 1);
    for (std::uint64_t i = 1; i < k; ++i) powers[i] = arith::mul_mod(powers[i - 1], h, l);
    std::vector<std::uint64_t> a(r, 0), c(r);
    for (;;) {
      for (std::size_t j = 0; j < r; ++j) c[j] = powers[a[j]];
      std::vector<std::uint64_t> pi(fr.rows.size(), 1);
      for (std::size_t i = 0; i < pi.size(); ++i)
        for (std::size_t j : fr.rows[i]) pi[i] = arith::mul_mod(pi[i], c[j], l);
      const std::uint64_t p = arith::mul_mod(pi[0], pi[fr.conj[0]], l);
      bool ok = arith::multiplicative_order_prime(p, l) == n && std::find(pi.begin(), pi.end(), 1) != pi.end();
      std::uint64_t lcm = 1;
      for (std::size_t i = 0; ok && i < pi.size(); ++i) {
        ok = arith::mul_mod(pi[i], pi[fr.conj[i]], l) == p;
        lcm = arith::lcm_u64(lcm, arith::multiplicative_order_prime(pi[i], l));
      }
      // distinct residues keep l off disc(P)
      auto sorted = pi;
      std::sort(sorted.begin(), sorted.end());
      ok = ok && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      if (ok && lcm == mn) out.push_back(c);
      std::size_t j = r;
      while (j-- > 0) {
        if (++a[j] < k) break;
        a[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    if (!out.empty()) break;
  }
  return out;
}

// Least-height integer lift of prescribed residues at the reflex roots mod l.
std::vector<long> lift_residues(const std::vector<std::uint64_t>& roots, const std::vector<std::uint64_t>& c, std::uint64_t l) {
  PrimeFieldPoly acc(l);
  for (std::size_t j = 0; j < roots.size(); ++j) {
    PrimeFieldPoly basis = PrimeFieldPoly::constant(l, 1);
    std::uint64_t den = 1;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (k == j) continue;
      basis = basis * PrimeFieldPoly(l, {l - roots[k], 1});
      den = arith::mul_mod(den, (roots[j] + l - roots[k]) % l, l);
    }
    acc = acc + basis * PrimeFieldPoly::constant(l, arith::mul_mod(c[j], arith::inverse_mod(den, l), l));
  }
  std::vector<long> out(roots.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t v = acc.coeff(i);
    out[i] = v > l / 2 ? static_cast<long>(v) - static_cast<long>(l) : static_cast<long>(v);
  }
  return out;
}

} // namespace

ConstructionCertificate construct_ordinary_cm_full(const CMType& type, unsigned m, unsigned n, std::uint64_t l,
                                                   const RunConfig& config) {
  require(m >= 1 && n >= 1, "construct_ordinary_cm_full: m and n must be positive");
  require(arith::is_prime_u64(l) && (l - 1) % (std::uint64_t{m} * n) == 0,
          "construct_ordinary_cm_full: l must be a prime = 1 mod mn");
  require(!mpz_divisible_ui_p(discriminant(type.embeddings.poly).get_mpz_t(), l),
          "construct_ordinary_cm_full: l must not divide disc(L)");
  CMSearch search(type, config);
  const ResidueFrame frame = residue_frame(type, search.reflex, l);
  const auto targets = residue_targets(frame, l, m, n);
  if (targets.empty()) fail(ErrorKind::Domain, "no residue class mod l gives distinct Frobenius residues with embedding degree n and full degree mn");
  std::vector<std::vector<long>> bases;
  for (const auto& c : targets) bases.push_back(lift_residues(frame.reflex_roots, c, l));

  const auto t = search.approx_roots();
  auto degree_n = [&](std::uint64_t p) { return p != l && arith::multiplicative_order_prime(p % l, l) == n; };
  const long step = static_cast<long>(l);
  for (unsigned box = 0; box <= config.norm_box_max; ++box) {
    for (std::size_t target = 0; target < bases.size(); ++target) {
      std::optional<ConstructionCertificate> hit;
      std::vector<long> a(bases[target].size());
      for_each_on_shell(a.size(), box, [&](const std::vector<long>& beta) {
        if (hit) return;
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = bases[target][i] + step * beta[i];
        const auto cand = search.consider(a, t, degree_n);
        if (!cand) return;
        const auto found = search.weil_of(*cand);
        if (!found) return;
        const WeilNumber& w = found->first;
        // the residue class fixes these; they are rechecked exactly
        if (mpz_divisible_ui_p(discriminant(w.min_poly).get_mpz_t(), l) || !divides_order(w, l).divides ||
            embedding_degree(w, l) != n || full_embedding_degree(w, l) != std::uint64_t{m} * n)
          return;
        Json inputs = cm_inputs(type);
        inputs["m"] = m;
        inputs["n"] = n;
        inputs["l"] = l;
        ConstructionCertificate c = detail::start(ConstructionKind::OrdinaryCMFull, inputs, config, w);
        c.embedding = certify_embedding(w, l);
        c.construction = search.witness(*cand, found->second);
        c.construction["residues"] = {{"L_roots_mod_l", frame.l_roots},
                                      {"reflex_roots_mod_l", frame.reflex_roots},
                                      {"type_rows", frame.rows},
                                      {"alpha_residues", residues_at(cand->alpha, frame.reflex_roots, l)},
                                      {"pi_residues", residues_at(found->second, frame.l_roots, l)},
                                      {"target", target}};
        c.trace.candidates_examined = search.examined;
        hit = std::move(c);
      });
      if (hit) return std::move(*hit);
    }
  }
  fail(ErrorKind::BudgetExceeded, "search budget exhausted: " + std::to_string(bases.size()) +
                                      " residue classes mod l, no prime-norm generator within norm_box_max (" +
                                      std::to_string(search.examined) + " generators examined)");
}

} // namespace avforge
