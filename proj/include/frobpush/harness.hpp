#pragma once

// Parameterized verification suites and slope-scenario evaluation, producing
// JSON reports. Reports are deterministic for a fixed configuration: every
// pseudorandom stream is a std::mt19937_64 seeded through std::seed_seq from
// (seed, case key), values are drawn as rng() % bound, and object keys are
// sorted. Wall-clock timings live only under the top-level "timings_ms" key.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frobpush/fp_linalg.hpp"

namespace frobpush {

inline constexpr std::string_view kToolName = "frobpush";
inline constexpr std::string_view kVersion = "1.0.0";

enum class Suite { ranks, koszul, matching, prop36, filtration, slopes };

std::string_view suite_name(Suite s);
/// Throws ConfigError for unknown names.
Suite parse_suite(std::string_view name);
std::vector<Suite> all_suites();

struct SuiteConfig {
  int n_min = 1;
  int n_max = 3;
  std::vector<std::uint32_t> primes{2, 3, 5};
  /// (n, p) pairs with p^n above this are skipped and listed in the report.
  std::uint64_t max_ambient_dim = 243;
  int max_sigma = 12;
  int sigma_limit = 12;
  int matching_n_max = 4;
  int matching_cap_max = 4;
  std::size_t random_subspaces_per_grade = 100;
  /// Grades with more basis monomials than this check singletons,
  /// complements of singletons and the full space instead of every subset.
  std::size_t coordinate_subset_limit = 10;
  std::size_t slope_profiles = 10000;
  std::uint64_t seed = 1;
  std::vector<Suite> suites;
};

/// Throws ConfigError; runs before any computation.
void validate(const SuiteConfig& config);

/// (n, p) pairs of the configured grid, n ascending then p ascending.
std::vector<std::pair<int, Prime>> grid_pairs(const SuiteConfig& config);

nlohmann::json config_to_json(const SuiteConfig& config);

/// Validates, then runs every selected suite. Report keys:
///   tool, version, config, passed, suites.<name>, skipped_pairs, timings_ms.
nlohmann::json run_suite(const SuiteConfig& config);

/// Copy of a report without the timing subtree.
nlohmann::json strip_timings(nlohmann::json report);

/// Parses scenario text; syntax errors become ConfigError "line L, column C: ...".
nlohmann::json parse_scenario_text(std::string_view text);

/// Evaluates slope scenarios. Input: {"scenarios": [record, ...]} or a bare
/// array. Record fields: n, p, rkW (default 1), exactly one of muW / c1WH,
/// exactly one of KH / g, optional profile, instabilities, rkE, IWX,
/// hypothesis ("monotone" | "mirror" | "none"), name. Rationals are JSON
/// integers or strings "a/b". Malformed records throw ConfigError naming the
/// record index and field.
nlohmann::json run_scenarios(const nlohmann::json& doc);

}  // namespace frobpush
