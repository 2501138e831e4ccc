#include "cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobpush/errors.hpp"
#include "frobpush/harness.hpp"
#include "frobpush/monomial_box.hpp"

namespace frobpush {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;

int write_report(const nlohmann::json& report, const std::string& path, std::ostream& out,
                 std::ostream& err) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
  } else {
    std::ofstream file(path);
    if (!file) {
      err << "error: cannot write " << path << "\n";
      return kExitConfig;
    }
    file << text;
  }
  return kExitOk;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-field checks for Frobenius pushforward structure"};
  app.name("frobpush");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  SuiteConfig config;
  std::vector<std::string> suite_names;
  bool suites_given = false;
  std::string suites_text;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Run verification suites over an (n, p) grid");
  verify->add_option("--n-min", config.n_min, "Smallest number of variables")->capture_default_str();
  verify->add_option("--n-max", config.n_max, "Largest number of variables")->capture_default_str();
  verify->add_option("--primes", config.primes, "Comma-separated primes")->delimiter(',')->capture_default_str();
  verify->add_option("--suites", suites_text,
                     "Comma-separated subset of ranks,koszul,matching,prop36,filtration,slopes (default: all)");
  verify->add_option("--seed", config.seed, "Seed for every pseudorandom stream")->capture_default_str();
  verify->add_option("--out", report_path, "Report file (default: stdout)");
  verify->add_option("--max-ambient-dim", config.max_ambient_dim, "Skip (n, p) with p^n above this")
      ->capture_default_str();
  verify->add_option("--max-sigma", config.max_sigma, "Largest cap sum in the matching sweep")
      ->capture_default_str();
  verify->add_option("--sigma-limit", config.sigma_limit, "Hard limit for --max-sigma")->capture_default_str();
  verify->add_option("--matching-n-max", config.matching_n_max, "Longest caps vector in the matching sweep")
      ->capture_default_str();
  verify->add_option("--matching-cap-max", config.matching_cap_max, "Largest single cap in the matching sweep")
      ->capture_default_str();
  verify->add_option("--random-subspaces", config.random_subspaces_per_grade,
                     "Random subspaces drawn per grade")
      ->capture_default_str();
  verify->add_option("--coordinate-limit", config.coordinate_subset_limit,
                     "Enumerate every coordinate subspace up to this grade dimension")
      ->capture_default_str();
  verify->add_option("--slope-profiles", config.slope_profiles, "Random rank profiles in the slopes suite")
      ->capture_default_str();

  std::vector<int> caps;
  int ell = 0;
  bool matching_json = false;
  auto* matching = app.add_subcommand("matching", "Print the dominance matching M^l(caps) -> M^(sigma-l)(caps)");
  matching->add_option("--caps", caps, "Comma-separated caps")->delimiter(',')->required();
  matching->add_option("--ell", ell, "Source degree, 2 l <= sum of caps")->required();
  matching->add_flag("--json", matching_json, "Emit the pairs as JSON");

  std::string scenario_path;
  std::string scenario_out;
  auto* slopes = app.add_subcommand("slopes", "Evaluate slope scenarios");
  slopes->add_option("--scenario", scenario_path, "Scenario file (JSON)")->required();
  slopes->add_option("--out", scenario_out, "Result file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  suites_given = verify->count("--suites") > 0;

  try {
    if (*verify) {
      if (suites_given) {
        std::stringstream ss(suites_text);
        std::string name;
        while (std::getline(ss, name, ',')) {
          if (!name.empty()) config.suites.push_back(parse_suite(name));
        }
      } else {
        config.suites = all_suites();
      }
      const nlohmann::json report = run_suite(config);
      if (const int rc = write_report(report, report_path, out, err); rc != kExitOk) return rc;
      const bool passed = report["passed"].get<bool>();
      if (!report_path.empty() && report_path != "-") {
        for (const auto& [name, suite] : report["suites"].items()) {
          out << name << ": " << (suite["passed"].get<bool>() ? "pass" : "FAIL") << " ("
              << suite["cases"].get<std::size_t>() << " cases)\n";
        }
      }
      return passed ? kExitOk : kExitFailed;
    }

    if (*matching) {
      const Matching m = leng_matching(caps, ell);
      const MatchingVerdict v = verify_matching(m);
      if (matching_json) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [src, img] : m.assignment) pairs.push_back({src.exponents(), img.exponents()});
        out << nlohmann::json{{"caps", caps},
                              {"ell", ell},
                              {"target_degree", m.target.degree()},
                              {"pairs", pairs},
                              {"verified", v.ok}}
                   .dump(2)
            << "\n";
      } else {
        for (const auto& [src, img] : m.assignment) out << to_string(src) << " -> " << to_string(img) << "\n";
        out << m.assignment.size() << " pairs, target degree " << m.target.degree() << ", "
            << (v.ok ? "verified" : "NOT verified: " + v.describe()) << "\n";
      }
      return v.ok ? kExitOk : kExitFailed;
    }

    if (*slopes) {
      const nlohmann::json doc = parse_scenario_text(read_file(scenario_path));
      const nlohmann::json result = run_scenarios(doc);
      if (const int rc = write_report(result, scenario_out, out, err); rc != kExitOk) return rc;
      return result["passed"].get<bool>() ? kExitOk : kExitFailed;
    }
  } catch (const std::invalid_argument& e) {
    // ConfigError and the precondition, modulus and dimension errors.
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace frobpush
