#pragma once

// JSON forms of the library's reports. Polynomials are arrays of decimal
// strings, constant term first; rationals are "num/den" strings.

#include "avforge/pairing.hpp"
#include "avforge/weil.hpp"

#include "json.hpp"

#include <string>

namespace avforge {

using Json = nlohmann::ordered_json;

Json to_json(const Int& v);
Json to_json(const Rational& v);
Json to_json(const IntPolynomial& p);
Json to_json(const WeilNumber& w);
Json to_json(const NewtonPolygon& np);
Json to_json(const HondaTateReport& r);
/// The Weil number is not repeated; it travels next to the certificate.
Json to_json(const EmbeddingCertificate& c);

// Readers throw Domain ("malformed ...") on shape or type errors.
Int int_from_json(const Json& j);
Rational rational_from_json(const Json& j);
IntPolynomial poly_from_json(const Json& j);
/// Fields only; validation is the caller's business.
WeilNumber weil_from_json(const Json& j);
EmbeddingCertificate embedding_from_json(const Json& j, const WeilNumber& w);

/// Typed member access with a uniform error message.
const Json& member(const Json& j, const char* key);
std::uint64_t u64_from_json(const Json& j);

/// FNV-1a 64 over the compact dump, as 16 hex digits.
std::string fnv1a64_hex(const std::string& text);

} // namespace avforge
