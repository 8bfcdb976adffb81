#pragma once

// The four constructions as deterministic searches emitting certificates.

#include "avforge/config.hpp"
#include "avforge/pairing.hpp"
#include "avforge/roots.hpp"
#include "avforge/serialize.hpp"
#include "avforge/weil.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace avforge {

enum class ConstructionKind { Supersingular, BaseChange, TypeIV, TypeIVEmbedding, OrdinaryCM, OrdinaryCMFull };

/// "supersingular", "basechange", "typeiv", "typeiv-embed", "ordinary-cm", "ordinary-cm-full".
const char* to_string(ConstructionKind kind);
ConstructionKind construction_kind_from_string(const std::string& name);

struct SearchTrace {
  std::uint64_t candidates_examined = 0;
  std::uint64_t seed = 0;
};

/// The emitted Weil number is weil^exponent over q^exponent; the exponent
/// stays symbolic unless expanded_min_poly fits the expansion bound.
struct ConstructionCertificate {
  ConstructionKind kind = ConstructionKind::Supersingular;
  Json inputs;
  RunConfig config;
  WeilNumber weil;
  Int exponent = 1;
  std::optional<IntPolynomial> expanded_min_poly;
  HondaTateReport honda_tate; // of weil
  std::optional<EmbeddingCertificate> embedding;
  Json construction; // kind-specific witnesses
  SearchTrace trace;
};

inline constexpr const char* kCertificateFormat = "avforge-certificate/1";

/// Certificate document, ending with an FNV-1a digest of everything before it.
Json to_json(const ConstructionCertificate& c);

ConstructionCertificate construct_supersingular(const Int& s, unsigned n, const RunConfig& config = {});

enum class SimplicityEvidence { Slope, Powers, Attested };
const char* to_string(SimplicityEvidence e);

ConstructionCertificate construct_base_change(const WeilNumber& w, unsigned m, unsigned n, const RunConfig& config = {},
                                              bool attest_absolutely_simple = false);

ConstructionCertificate construct_typeiv(const Int& p, const Int& a, unsigned d, const RunConfig& config = {});

ConstructionCertificate construct_typeiv_embedding(const ConstructionCertificate& typeiv, unsigned n,
                                                   const RunConfig& config = {});

/// One embedding from each conjugate pair of the certified roots of L.
struct CMType {
  ComplexEmbeddingSet embeddings;
  std::vector<std::size_t> chosen;
};

/// Validates that chosen picks exactly one index per conjugate pair.
CMType make_cm_type(const IntPolynomial& l_poly, std::vector<std::size_t> chosen, unsigned precision = kDefaultPrecisionBits);

struct ReflexData {
  IntPolynomial reflex_poly;               // minimal polynomial of t = sum over chosen of h(root)
  IntPolynomial generator_shape;           // h
  ComplexEmbeddingSet reflex_embeddings;   // certified roots of reflex_poly
  /// types[j]: the CM type (indices into L's roots) whose sum is reflex root j.
  std::vector<std::vector<std::size_t>> types;
  std::size_t designated = 0;              // reflex root attached to the input type
  std::vector<Rational> conjugation;       // complex conjugation of L in the power basis
};

/// Reflex field of (L, type) with exact checks; throws Domain "not a CM polynomial".
ReflexData build_reflex(const CMType& type);
Json to_json(const ReflexData& r);

/// pi = Nm_Psi(alpha) in the power basis of L, alpha = A(t) with A integral.
std::vector<Rational> reflex_type_norm(const CMType& type, const ReflexData& reflex, const IntPolynomial& alpha);

ConstructionCertificate construct_ordinary_cm(const CMType& type, unsigned n, const RunConfig& config = {});

ConstructionCertificate construct_ordinary_cm_full(const CMType& type, unsigned m, unsigned n, std::uint64_t l,
                                                   const RunConfig& config = {});

/// Re-derives every claim from the document alone; empty when the certificate holds.
std::vector<std::string> verify_certificate(const Json& document);

} // namespace avforge
