#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"frobpush"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = frobpush::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("frobpush_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("verify exit codes") {
  const Run ok = run({"verify", "--suites", "ranks,koszul", "--n-max", "2"});
  CHECK(ok.code == 0);
  const auto report = nlohmann::json::parse(ok.out);
  CHECK(report["passed"].get<bool>());
  CHECK(report["suites"].size() == 2);

  CHECK(run({"verify", "--suites", ""}).code == 0);
  CHECK(run({"verify", "--primes", "2,9"}).code == 2);
  CHECK(run({"verify", "--suites", "ranks,bogus"}).code == 2);
  CHECK(run({"verify", "--suites", "matching", "--max-sigma", "20"}).code == 2);
  CHECK(run({"verify", "--n-max", "two"}).code == 2);
  const Run bad = run({"verify", "--primes", "1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("verify writes a report file") {
  const auto path = std::filesystem::temp_directory_path() / "frobpush_test_report.json";
  std::filesystem::remove(path);
  const std::string arg = path.string();
  const Run r = run({"verify", "--suites", "ranks", "--n-max", "1", "--out", arg.c_str()});
  CHECK(r.code == 0);
  CHECK(r.out == "ranks: pass (" +
                     std::to_string(nlohmann::json::parse(std::ifstream(path))["suites"]["ranks"]["cases"]
                                        .get<std::size_t>()) +
                     " cases)\n");
  std::filesystem::remove(path);
}

TEST_CASE("matching subcommand") {
  const Run r = run({"matching", "--caps", "2,2", "--ell", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "(0,1) -> (1,2)\n(1,0) -> (2,1)\n2 pairs, target degree 3, verified\n");

  const Run j = run({"matching", "--caps", "1,2", "--ell", "1", "--json"});
  CHECK(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["verified"].get<bool>());
  CHECK(doc["target_degree"] == 2);
  CHECK(doc["pairs"] == nlohmann::json::parse("[[[0,1],[0,2]],[[1,0],[1,1]]]"));

  CHECK(run({"matching", "--caps", "2,2", "--ell", "3"}).code == 2);
  CHECK(run({"matching", "--caps", "2,2"}).code == 2);
}

TEST_CASE("slopes subcommand") {
  const auto good = temp_file("good.json", R"({"scenarios": [{"n": 1, "p": 2, "muW": "0", "g": 2}]})");
  const std::string good_arg = good.string();
  const Run ok = run({"slopes", "--scenario", good_arg.c_str()});
  CHECK(ok.code == 0);
  CHECK(nlohmann::json::parse(ok.out)["scenarios"][0]["mu_pushforward"] == "1/2");

  const auto broken = temp_file("broken.json", "{\n  \"scenarios\": [\n");
  const std::string broken_arg = broken.string();
  const Run parse_error = run({"slopes", "--scenario", broken_arg.c_str()});
  CHECK(parse_error.code == 2);
  CHECK(parse_error.err.find("line") != std::string::npos);

  const auto failing = temp_file(
      "failing.json", R"([{"n": 1, "p": 3, "muW": "0", "KH": "2", "profile": [0, 0, 2], "hypothesis": "none"}])");
  const std::string failing_arg = failing.string();
  CHECK(run({"slopes", "--scenario", failing_arg.c_str()}).code == 1);

  CHECK(run({"slopes", "--scenario", "/nonexistent/frobpush.json"}).code == 2);
  for (const auto& p : {good, broken, failing}) std::filesystem::remove(p);
}

TEST_CASE("argument errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(run({"verify", "--help"}).code == 0);
}
