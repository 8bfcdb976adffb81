#pragma once

#include "avforge/forge.hpp"

namespace avforge::detail {

ConstructionCertificate start(ConstructionKind kind, Json inputs, const RunConfig& config, const WeilNumber& w);

/// Minimal polynomial of pi^e when it fits the expansion bound; nullopt otherwise or for e = 1.
std::optional<IntPolynomial> try_expand(const WeilNumber& w, const Int& e, const RunConfig& config);

} // namespace avforge::detail
