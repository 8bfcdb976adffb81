#include "avforge/config.hpp"

#include "avforge/error.hpp"

#include <fstream>
#include <utility>

namespace avforge {

namespace {

using Field = std::uint64_t RunConfig::*;

const std::pair<const char*, Field> kFields[] = {
    {"seed", &RunConfig::seed},
    {"l_max", &RunConfig::l_max},
    {"p_max", &RunConfig::p_max},
    {"expansion_bit_bound", &RunConfig::expansion_bit_bound},
    {"precision_start", &RunConfig::precision_start},
    {"rho_iterations", &RunConfig::rho_iterations},
    {"norm_box_max", &RunConfig::norm_box_max},
    {"candidate_budget", &RunConfig::candidate_budget},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

arith::FactorBudget RunConfig::factor_budget() const {
  arith::FactorBudget b;
  b.rho_iterations = rho_iterations;
  return b;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const auto& [name, field] : kFields) {
    if (key != name) continue;
    const Int v = parse_int(value);
    if (v <= 0 || !fits_word(v)) fail(ErrorKind::Domain, "config: " + key + " must be a positive 63-bit integer");
    this->*field = to_u64(v);
    if (precision_start > kMaxPrecisionBits) fail(ErrorKind::Domain, "config: precision_start exceeds the precision ceiling");
    return;
  }
  fail(ErrorKind::Domain, "config: unknown key '" + key + "'");
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Domain, "config: cannot open '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Domain, "config: line " + std::to_string(number) + " is not key=value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

Json RunConfig::to_json() const {
  Json j;
  for (const auto& [name, field] : kFields) j[name] = this->*field;
  return j;
}

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  for (const auto& [name, field] : kFields) {
    const std::uint64_t v = u64_from_json(member(j, name));
    if (v == 0) fail(ErrorKind::Domain, std::string("config: ") + name + " must be positive");
    c.*field = v;
  }
  return c;
}

} // namespace avforge
