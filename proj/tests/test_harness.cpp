#include <doctest.h>

#include "frobpush/errors.hpp"
#include "frobpush/harness.hpp"
#include "frobpush/t_rep.hpp"
#include "oracles.hpp"

using namespace frobpush;
using nlohmann::json;

namespace {

SuiteConfig only(std::vector<Suite> suites) {
  SuiteConfig c;
  c.suites = std::move(suites);
  return c;
}

}  // namespace

TEST_CASE("suite names") {
  for (Suite s : all_suites()) CHECK(parse_suite(suite_name(s)) == s);
  CHECK_THROWS_AS(parse_suite("rank"), ConfigError);
  CHECK(all_suites().size() == 6);
}

TEST_CASE("configuration is rejected before any work") {
  SuiteConfig c = only({Suite::ranks});
  c.primes = {2, 4};
  CHECK_THROWS_AS(run_suite(c), ConfigError);
  c = only({Suite::ranks});
  c.primes = {1};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = only({Suite::matching});
  c.max_sigma = 13;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.sigma_limit = 13;
  CHECK_NOTHROW(validate(c));
  c = only({});
  c.n_max = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = only({});
  c.n_min = 3;
  c.n_max = 2;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = only({Suite::ranks, Suite::ranks});
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = only({});
  c.max_ambient_dim = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("grid of (n, p) pairs") {
  SuiteConfig c;
  CHECK(grid_pairs(c).size() == 9);
  c.primes = {5, 2, 3, 2};
  c.max_ambient_dim = 10;
  const auto pairs = grid_pairs(c);
  std::vector<std::pair<int, std::uint32_t>> got;
  for (const auto& [n, p] : pairs) got.emplace_back(n, p.value());
  CHECK(got == std::vector<std::pair<int, std::uint32_t>>{{1, 2}, {1, 3}, {1, 5}, {2, 2}, {2, 3}, {3, 2}});

  c.suites = {};
  const json report = run_suite(c);
  CHECK(report["skipped_pairs"].size() == 3);
}

TEST_CASE("empty suite list passes trivially") {
  const json report = run_suite(only({}));
  CHECK(report["passed"].get<bool>());
  CHECK(report["suites"].empty());
  CHECK(report["tool"] == "frobpush");
  CHECK(report.contains("timings_ms"));
  CHECK(report["config"]["seed"] == 1);
}

TEST_CASE("ranks suite reports one row per (n, p, l)") {
  const json report = run_suite(only({Suite::ranks}));
  CHECK(report["passed"].get<bool>());
  const json& suite = report["suites"]["ranks"];
  // sum over n <= 3, p in {2,3,5} of n(p-1) + 1
  std::size_t expected_rows = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int p : {2, 3, 5}) expected_rows += static_cast<std::size_t>(n * (p - 1) + 1);
  }
  REQUIRE(suite["table"].size() == expected_rows);
  for (const json& row : suite["table"]) {
    const auto expected = oracle::truncated_count(row["n"].get<int>(), row["p"].get<int>(), row["ell"].get<int>());
    CHECK(row["t_rank"].get<std::int64_t>() == expected);
    CHECK(row["matrix_rank"].get<std::int64_t>() == expected);
    CHECK(row["ok"].get<bool>());
  }
  CHECK(suite["failure_count"] == 0);
}

TEST_CASE("matching suite counts boxes and cases") {
  SuiteConfig c = only({Suite::matching});
  c.max_sigma = 12;
  const json report = run_suite(c);
  const json& suite = report["suites"]["matching"];
  CHECK(suite["passed"].get<bool>());

  std::size_t boxes = 0;
  std::size_t cases = 0;
  for (int n = 1; n <= 4; ++n) {
    const std::vector<int> upper(static_cast<std::size_t>(n), 4);
    for (int sigma = 0; sigma <= 12; ++sigma) {
      const std::size_t count = oracle::box(upper, sigma).size();
      boxes += count;
      cases += count * static_cast<std::size_t>(sigma / 2 + 1);
    }
  }
  CHECK(suite["boxes"].get<std::size_t>() == boxes);
  CHECK(suite["cases"].get<std::size_t>() == cases);
  CHECK(boxes == 745);
}

TEST_CASE("remaining suites pass on a reduced grid") {
  SuiteConfig c = only({Suite::koszul, Suite::prop36, Suite::filtration, Suite::slopes});
  c.n_max = 2;
  c.random_subspaces_per_grade = 10;
  c.slope_profiles = 500;
  const json report = run_suite(c);
  CHECK(report["passed"].get<bool>());
  for (const char* name : {"koszul", "prop36", "filtration", "slopes"}) {
    CAPTURE(name);
    CHECK(report["suites"][name]["passed"].get<bool>());
    CHECK(report["suites"][name]["cases"].get<std::size_t>() > 0);
    CHECK(report["suites"][name]["failures"].empty());
  }
  CHECK(report["suites"]["slopes"]["random_profiles"] == 500);

  bool wilson = false;
  for (const json& row : report["suites"]["prop36"]["pairing"]) {
    if (row["n"] == 1 && row["p"] == 5 && row["ell"] == 4) wilson = row["entry"] == 4;
  }
  CHECK(wilson);
}

TEST_CASE("reports are reproducible up to timings") {
  SuiteConfig c = all_suites().empty() ? SuiteConfig{} : only(all_suites());
  c.n_max = 2;
  c.random_subspaces_per_grade = 20;
  c.slope_profiles = 300;
  c.seed = 42;
  const json a = run_suite(c);
  const json b = run_suite(c);
  CHECK(strip_timings(a).dump() == strip_timings(b).dump());
  CHECK_FALSE(strip_timings(a).contains("timings_ms"));
  CHECK(a.contains("timings_ms"));
}

TEST_CASE("scenario text parsing") {
  CHECK(parse_scenario_text(R"({"scenarios": []})")["scenarios"].empty());
  try {
    parse_scenario_text("{\n  \"scenarios\": [\n    {\"n\": 1,, }\n  ]\n}");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.rfind("line 3, column ", 0) == 0);
  }
}

TEST_CASE("scenario evaluation") {
  const json doc = parse_scenario_text(R"({"scenarios": [
    {"name": "curve", "n": 1, "p": 2, "muW": "0", "g": 2},
    {"name": "negative", "n": 2, "p": 3, "muW": 0, "KH": "-1", "IWX": "2"},
    {"name": "full", "n": 1, "p": 3, "muW": "0", "g": 2, "profile": [2, 2, 2]},
    {"name": "pair", "n": 1, "p": 3, "muW": "0", "g": 2, "profile": [1, 1], "rkE": 2},
    {"name": "unordered", "n": 1, "p": 3, "rkW": 2, "c1WH": "1/2", "g": 3, "profile": [1, 2]}
  ]})");
  const json out = run_scenarios(doc);
  CHECK(out["passed"].get<bool>());
  const json& s = out["scenarios"];
  REQUIRE(s.size() == 5);
  CHECK(s[0]["mu_pushforward"] == "1/2");
  CHECK(s[0]["c1_pushforward"] == "1");
  CHECK(s[1]["kh_negative"].get<bool>());
  CHECK(s[1]["instability_bound"].is_null());
  CHECK_FALSE(s[1]["warnings"].empty());
  CHECK(s[2]["gap_lower_bound"] == "0");
  CHECK(s[2]["curve_gap"] == "0");
  CHECK(s[2]["equality_diagnosis"]["full_length"].get<bool>());
  CHECK(s[2]["equality_diagnosis"]["mirror_symmetric"].get<bool>());
  CHECK(s[3]["gap_lower_bound"] == "1/3");
  // a monotonicity violation is reported, not fatal
  CHECK_FALSE(s[4]["hypothesis_ok"].get<bool>());
  CHECK(s[4]["hypothesis_violations"].size() == 1);
  CHECK(s[4]["passed"].get<bool>());

  // a bare array is accepted too
  CHECK(run_scenarios(json::array())["passed"].get<bool>());
}

TEST_CASE("a negative weight sum without a hypothesis fails the scenario") {
  const json out = run_scenarios(parse_scenario_text(
      R"([{"n": 1, "p": 3, "muW": "0", "KH": "2", "profile": [0, 0, 2], "hypothesis": "none"}])"));
  CHECK_FALSE(out["passed"].get<bool>());
  CHECK(out["scenarios"][0]["weight_sum"] == "-2");
}

TEST_CASE("malformed scenarios") {
  auto rejects = [](const char* text, const char* fragment) {
    CAPTURE(text);
    try {
      run_scenarios(parse_scenario_text(text));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  rejects(R"({"cases": []})", "scenarios");
  rejects(R"({"scenarios": {}})", "array");
  rejects(R"([{"p": 3, "muW": "0", "KH": "1"}])", "'n'");
  rejects(R"([{"n": 1, "p": 4, "muW": "0", "KH": "1"}])", "'p'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "c1WH": "0", "KH": "1"}])", "muW");
  rejects(R"([{"n": 1, "p": 3, "muW": "0"}])", "KH");
  rejects(R"([{"n": 2, "p": 3, "muW": "0", "g": 2}])", "'g'");
  rejects(R"([{"n": 1, "p": 3, "muW": 0.5, "KH": "1"}])", "'muW'");
  rejects(R"([{"n": 1, "p": 3, "muW": "1/0", "KH": "1"}])", "'muW'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "colour": 1}])", "'colour'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "profile": [1, 1], "rkE": 3}])", "'rkE'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "profile": [1, 1, 1, 1]}])", "'profile'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "profile": [1, 1], "instabilities": ["0"]}])", "'instabilities'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "profile": [1, 1], "instabilities": ["0", "-1"]}])", "'instabilities'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "IWX": "-1"}])", "'IWX'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1", "profile": [1], "hypothesis": "strict"}])", "'hypothesis'");
  rejects(R"([{"n": 1, "p": 3, "muW": "0", "KH": "1"}, {"n": 0, "p": 3, "muW": "0", "KH": "1"}])", "scenario 1");
}
