// Command-line front end. One command per invocation; JSON on stdout,
// diagnostics on stderr. Exit codes: 0 ok, 1 verification failure,
// 2 invalid input, 3 budget exhausted.

#include "CLI11.hpp"

#include "avforge/error.hpp"
#include "avforge/forge.hpp"
#include "avforge/pairing.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace avforge;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Verification: return 1;
  case ErrorKind::BudgetExceeded:
  case ErrorKind::ExpansionTooLarge:
  case ErrorKind::PrecisionExhausted: return 3;
  default: return 2;
  }
}

Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const Int v = parse_int(item);
    if (v < 0 || !fits_word(v)) fail(ErrorKind::Domain, "CM type: bad index '" + item + "'");
    out.push_back(static_cast<std::size_t>(to_u64(v)));
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Domain, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return Json::parse(buf.str());
}

Json analyze(const IntPolynomial& poly, const Int& p, unsigned k, const std::vector<std::uint64_t>& ls) {
  const WeilNumber w = validate_weil(poly, p, k);
  const HondaTateReport report = honda_tate(w);
  Json out;
  out["valid"] = true;
  out["weil"] = to_json(w);
  out["honda_tate"] = to_json(report);
  out["group_order"] = to_json(group_order(w));
  out["absolutely_simple_by_slope"] = to_string(is_absolutely_simple_by_slope(w));
  Json per_l = Json::array();
  for (std::uint64_t l : ls) {
    try {
      per_l.push_back(to_json(certify_embedding(w, l)));
    } catch (const Error& e) {
      per_l.push_back({{"l", l}, {"rejected", {{"kind", to_string(e.kind())}, {"message", e.what()}}}});
    }
  }
  out["embeddings"] = per_l;
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"avforge: pairing-friendly abelian-variety parameters with checkable certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path;
  std::uint64_t seed = 0, p_max = 0, l_max = 0;
  std::vector<std::string> overrides;
  auto* seed_opt = app.add_option("--seed", seed, "seed for the randomized factorization step");
  auto* p_max_opt = app.add_option("--p-max", p_max, "largest prime p the CM searches may use");
  auto* l_max_opt = app.add_option("--l-max", l_max, "largest prime l the scans may use");
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--set", overrides, "override one configuration key (key=value)");
  app.add_option("--out", out_path, "also write the JSON result to this file");

  std::string poly_text, p_text, a_text, s_text, l_poly_text, type_text, cert_path;
  unsigned k = 1, d = 0, n_big = 0, m = 0, n = 0;
  std::uint64_t l = 0;
  std::vector<std::uint64_t> ls;
  bool attest = false;

  auto* analyze_cmd = app.add_subcommand("analyze", "validate a Weil polynomial and report its invariants");
  analyze_cmd->add_option("--poly", poly_text, "coefficients, constant term first")->required();
  analyze_cmd->add_option("--p", p_text, "characteristic")->required();
  analyze_cmd->add_option("--k", k, "q = p^k");
  analyze_cmd->add_option("--l", ls, "primes l for embedding certificates");

  auto* construct = app.add_subcommand("construct", "run one of the constructions");
  construct->require_subcommand(1);
  auto* ss = construct->add_subcommand("supersingular", "s^phi(2N) Phi_2N(X/s) over F_{s^2}");
  ss->add_option("--s", s_text)->required();
  ss->add_option("--N", n_big)->required();
  auto* bc = construct->add_subcommand("basechange", "split the embedding degree n from the full degree mn");
  bc->add_option("--poly", poly_text)->required();
  bc->add_option("--p", p_text)->required();
  bc->add_option("--k", k);
  bc->add_option("--m", m)->required();
  bc->add_option("--n", n)->required();
  bc->add_flag("--attest-absolutely-simple", attest, "accept absolute simplicity without proof");
  auto* t4 = construct->add_subcommand("typeiv", "pi^(d-1) conj(pi) for an elliptic pi over F_p");
  t4->add_option("--p", p_text)->required();
  t4->add_option("--a", a_text)->required();
  t4->add_option("--d", d)->required();
  auto* t4e = construct->add_subcommand("typeiv-embed", "power of a type IV Weil number with embedding degree N");
  t4e->add_option("--p", p_text);
  t4e->add_option("--a", a_text);
  t4e->add_option("--d", d);
  t4e->add_option("--certificate", cert_path, "typeiv certificate to start from");
  t4e->add_option("--N", n_big)->required();
  auto* ocm = construct->add_subcommand("ordinary-cm", "reflex type norm with embedding degree N");
  ocm->add_option("--L", l_poly_text, "CM field polynomial, constant term first")->required();
  ocm->add_option("--type", type_text, "root indices, one per conjugate pair")->required();
  ocm->add_option("--N", n_big)->required();
  auto* ocmf = construct->add_subcommand("ordinary-cm-full", "reflex type norm with embedding degree n, full degree mn");
  ocmf->add_option("--L", l_poly_text)->required();
  ocmf->add_option("--type", type_text)->required();
  ocmf->add_option("--m", m)->required();
  ocmf->add_option("--n", n)->required();
  ocmf->add_option("--l", l)->required();

  auto* verify_cmd = app.add_subcommand("verify", "re-derive every claim of a certificate");
  verify_cmd->add_option("file", cert_path)->required();

  auto* reflex_cmd = app.add_subcommand("reflex", "reflex field of a CM type");
  reflex_cmd->add_option("--L", l_poly_text)->required();
  reflex_cmd->add_option("--type", type_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cout << error_json("usage", e.what()).dump(2) << "\n";
    return 2;
  }

  auto emit = [&](const Json& j) {
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
      std::ofstream f(out_path);
      if (!f) fail(ErrorKind::Domain, "cannot write '" + out_path + "'");
      f << text;
    }
  };

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) fail(ErrorKind::Domain, "--set expects key=value");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed_opt->count()) cfg.set("seed", std::to_string(seed));
    if (p_max_opt->count()) cfg.set("p_max", std::to_string(p_max));
    if (l_max_opt->count()) cfg.set("l_max", std::to_string(l_max));

    if (*analyze_cmd) {
      emit(analyze(IntPolynomial::from_csv(poly_text), parse_int(p_text), k, ls));
    } else if (*verify_cmd) {
      Json doc;
      try {
        doc = read_json_file(cert_path);
      } catch (const Json::parse_error& e) {
        emit({{"verified", false}, {"failures", {std::string("malformed JSON: ") + e.what()}}});
        return 1;
      }
      const auto failures = verify_certificate(doc);
      emit({{"verified", failures.empty()}, {"failures", failures}});
      if (!failures.empty()) std::cerr << "verification failed: " << failures.front() << "\n";
      return failures.empty() ? 0 : 1;
    } else if (*reflex_cmd) {
      emit(to_json(build_reflex(make_cm_type(IntPolynomial::from_csv(l_poly_text), parse_indices(type_text),
                                             static_cast<unsigned>(cfg.precision_start)))));
    } else if (*ss) {
      emit(to_json(construct_supersingular(parse_int(s_text), n_big, cfg)));
    } else if (*bc) {
      const WeilNumber w = validate_weil(IntPolynomial::from_csv(poly_text), parse_int(p_text), k);
      emit(to_json(construct_base_change(w, m, n, cfg, attest)));
    } else if (*t4) {
      emit(to_json(construct_typeiv(parse_int(p_text), parse_int(a_text), d, cfg)));
    } else if (*t4e) {
      if (!cert_path.empty()) {
        const Json doc = read_json_file(cert_path);
        const auto failures = verify_certificate(doc);
        if (!failures.empty()) fail(ErrorKind::Verification, "typeiv certificate does not verify: " + failures.front());
        if (member(doc, "kind") != to_string(ConstructionKind::TypeIV))
          fail(ErrorKind::Domain, "--certificate must be a typeiv certificate");
        const Json& in = member(doc, "inputs");
        p_text = member(in, "p").get<std::string>();
        a_text = member(in, "a").get<std::string>();
        d = static_cast<unsigned>(u64_from_json(member(in, "d")));
      } else if (p_text.empty() || a_text.empty() || d == 0) {
        fail(ErrorKind::Domain, "typeiv-embed needs --certificate or all of --p, --a, --d");
      }
      emit(to_json(construct_typeiv_embedding(construct_typeiv(parse_int(p_text), parse_int(a_text), d, cfg), n_big, cfg)));
    } else if (*ocm) {
      const CMType type = make_cm_type(IntPolynomial::from_csv(l_poly_text), parse_indices(type_text),
                                       static_cast<unsigned>(cfg.precision_start));
      emit(to_json(construct_ordinary_cm(type, n_big, cfg)));
    } else if (*ocmf) {
      const CMType type = make_cm_type(IntPolynomial::from_csv(l_poly_text), parse_indices(type_text),
                                       static_cast<unsigned>(cfg.precision_start));
      emit(to_json(construct_ordinary_cm_full(type, m, n, l, cfg)));
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    std::cout << error_json(to_string(e.kind()), e.what()).dump(2) << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    std::cout << error_json("domain", std::string("malformed JSON: ") + e.what()).dump(2) << "\n";
    return 2;
  }
}
