#pragma once

// Search bounds and effort budgets shared by the constructions and the CLI.

#include "avforge/arith.hpp"
#include "avforge/number_field.hpp"
#include "avforge/prime_field.hpp"
#include "avforge/roots.hpp"
#include "avforge/serialize.hpp"

#include <cstdint>
#include <string>

namespace avforge {

struct RunConfig {
  std::uint64_t seed = kDefaultSplitSeed;
  std::uint64_t l_max = 1'000'000;
  std::uint64_t p_max = 100'000;
  std::uint64_t expansion_bit_bound = kDefaultExpansionBits;
  std::uint64_t precision_start = kDefaultPrecisionBits;
  std::uint64_t rho_iterations = std::uint64_t{1} << 26;
  std::uint64_t norm_box_max = 32;         // coefficient box radius for generator enumeration
  std::uint64_t candidate_budget = 5'000'000; // generators examined per search

  arith::FactorBudget factor_budget() const;

  /// Sets one key from text; throws Domain on unknown keys, bad numbers or zero.
  void set(const std::string& key, const std::string& value);
  /// Reads "key = value" lines; '#' starts a comment.
  void load_file(const std::string& path);

  Json to_json() const;
  static RunConfig from_json(const Json& j);
};

} // namespace avforge
