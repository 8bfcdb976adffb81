#include "avforge/serialize.hpp"

#include "avforge/error.hpp"

#include <cstdio>

namespace avforge {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::Domain, "malformed JSON: " + what); }

} // namespace

Json to_json(const Int& v) { return to_decimal(v); }

Json to_json(const Rational& v) { return to_fraction(v); }

Json to_json(const IntPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coefficients()) a.push_back(to_decimal(c));
  return a;
}

Json to_json(const WeilNumber& w) {
  Json j;
  j["min_poly"] = to_json(w.min_poly);
  j["p"] = to_json(w.p);
  j["k"] = w.k;
  j["q"] = to_json(w.q());
  j["m_pi"] = w.m_pi;
  return j;
}

Json to_json(const NewtonPolygon& np) {
  Json slopes = Json::array();
  for (const auto& s : np.slopes) slopes.push_back({{"slope", to_json(s.slope)}, {"multiplicity", s.multiplicity}});
  Json j;
  j["slopes"] = std::move(slopes);
  j["symmetric"] = np.symmetric();
  j["integral_breakpoints"] = np.integral_breakpoints();
  return j;
}

Json to_json(const HondaTateReport& r) {
  Json invs = Json::array();
  for (const auto& i : r.hasse_invariants) {
    Json e;
    e["place"] = i.place;
    e["local_degree"] = i.local_degree;
    e["slope"] = to_json(i.slope);
    e["invariant"] = to_json(i.invariant);
    invs.push_back(std::move(e));
  }
  Json j;
  j["dim"] = r.dim;
  j["center_degree"] = r.center_degree;
  j["index"] = r.index;
  j["hasse_invariants"] = std::move(invs);
  j["classification"] = to_string(r.classification, r.typeiv_d);
  j["absolutely_simple"] = to_string(r.absolutely_simple);
  j["newton_polygon"] = to_json(r.polygon);
  return j;
}

Json to_json(const EmbeddingCertificate& c) {
  Json j;
  j["l"] = c.l;
  j["exponent"] = to_json(c.exponent);
  j["group_order"] = c.group_order ? to_json(*c.group_order) : Json(nullptr);
  j["residue_roots"] = c.residue_roots;
  j["designated_residue"] = c.designated_residue;
  j["embedding_degree"] = c.embedding_degree;
  j["full_embedding_degree"] = c.full_embedding_degree;
  return j;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t u64_from_json(const Json& j) {
  if (!j.is_number_unsigned()) {
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    malformed("expected a nonnegative integer, got " + j.dump());
  }
  return j.get<std::uint64_t>();
}

Int int_from_json(const Json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_unsigned()) return from_u64(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
  malformed("expected an integer, got " + j.dump());
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_fraction(j.get<std::string>());
  return Rational(int_from_json(j));
}

IntPolynomial poly_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) malformed("expected a nonempty coefficient array");
  std::vector<Int> c;
  for (const auto& e : j) c.push_back(int_from_json(e));
  return IntPolynomial(std::move(c));
}

WeilNumber weil_from_json(const Json& j) {
  WeilNumber w;
  w.min_poly = poly_from_json(member(j, "min_poly"));
  w.p = int_from_json(member(j, "p"));
  w.k = static_cast<unsigned>(u64_from_json(member(j, "k")));
  w.m_pi = static_cast<unsigned>(u64_from_json(member(j, "m_pi")));
  return w;
}

EmbeddingCertificate embedding_from_json(const Json& j, const WeilNumber& w) {
  EmbeddingCertificate c;
  c.w = w;
  c.l = u64_from_json(member(j, "l"));
  c.exponent = int_from_json(member(j, "exponent"));
  const Json& order = member(j, "group_order");
  if (!order.is_null()) c.group_order = int_from_json(order);
  const Json& roots = member(j, "residue_roots");
  if (!roots.is_array()) malformed("residue_roots must be an array");
  for (const auto& r : roots) c.residue_roots.push_back(u64_from_json(r));
  c.designated_residue = u64_from_json(member(j, "designated_residue"));
  c.embedding_degree = u64_from_json(member(j, "embedding_degree"));
  c.full_embedding_degree = u64_from_json(member(j, "full_embedding_degree"));
  return c;
}

std::string fnv1a64_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace avforge
