#include "frobpush/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>

#include "frobpush/errors.hpp"
#include "frobpush/filtration.hpp"
#include "frobpush/monomial_box.hpp"
#include "frobpush/slopes.hpp"
#include "frobpush/t_rep.hpp"
#include "frobpush/trunc_algebra.hpp"

namespace frobpush {

using nlohmann::json;

namespace {

// Dense tensor-coordinate matrices above this many entries are not built.
constexpr std::uint64_t kDenseEntryLimit = std::uint64_t{1} << 26;
// Failure witnesses kept per suite; the full count is always reported.
constexpr std::size_t kMaxWitnesses = 50;

constexpr int kHardMaxN = 8;
constexpr std::uint64_t kHardMaxAmbient = 100000;
constexpr std::size_t kHardMaxRandomSubspaces = 100000;
constexpr std::size_t kHardMaxProfiles = 10000000;

struct SuiteResult {
  json table = json::array();
  json failures = json::array();
  std::size_t failure_count = 0;
  std::size_t cases = 0;
  json extra = json::object();

  void fail(json witness) {
    ++failure_count;
    if (failures.size() < kMaxWitnesses) failures.push_back(std::move(witness));
  }

  json to_json() const {
    json out = extra;
    out["passed"] = failure_count == 0;
    out["cases"] = cases;
    out["failure_count"] = failure_count;
    out["failures"] = failures;
    out["table"] = table;
    return out;
  }
};

json matrix_rows(const FpMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::mt19937_64 case_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32)};
  for (std::uint64_t k : key) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

std::uint64_t dense_entries(std::size_t rows, int n, int ell) {
  const std::size_t words = word_count(n, ell);
  return static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(words);
}

// ---------------------------------------------------------------- ranks

SuiteResult run_ranks(const SuiteConfig& config) {
  SuiteResult res;
  json skipped = json::array();
  for (const auto& [n, p] : grid_pairs(config)) {
    const int top = top_degree(n, p);
    for (int ell = 0; ell <= top; ++ell) {
      ++res.cases;
      const std::int64_t formula = t_rank(n, p, ell);
      const auto basis = t_basis(n, p, ell);
      json row{{"n", n}, {"p", p.value()}, {"ell", ell}, {"t_rank", formula},
               {"basis_size", basis.size()}};
      bool ok = formula == static_cast<std::int64_t>(basis.size());

      const std::size_t sym_rows = sym_basis(n, ell).size();
      if (dense_entries(sym_rows, n, ell) <= kDenseEntryLimit) {
        const std::size_t r = rank(sym_to_t_matrix(n, p, ell));
        row["matrix_rank"] = r;
        ok = ok && static_cast<std::int64_t>(r) == formula;
      } else {
        row["matrix_rank"] = nullptr;
        skipped.push_back({{"n", n}, {"p", p.value()}, {"ell", ell}, {"reason", "tensor matrix too large"}});
      }

      const WeightVerdict w = degree_weight_check(n, p, ell);
      row["weight_balanced"] = w.ok;
      ok = ok && w.ok;

      if (n == 2) {
        const std::int64_t g = gl2_dim(p, ell);
        row["gl2_dim"] = g;
        ok = ok && g == formula;
      }
      row["ok"] = ok;
      if (!ok) res.fail(row);
      res.table.push_back(std::move(row));
    }
  }
  res.extra["skipped_cases"] = skipped;
  return res;
}

// ---------------------------------------------------------------- koszul

SuiteResult run_koszul(const SuiteConfig& config) {
  SuiteResult res;
  for (const auto& [n, p] : grid_pairs(config)) {
    const int top = top_degree(n, p);
    for (int ell = 0; ell <= top; ++ell) {
      ++res.cases;
      const KoszulVerdict v = verify_koszul_exact(n, p, ell);
      json row{{"n", n},
               {"p", p.value()},
               {"ell", ell},
               {"exact", v.exact},
               {"dims", v.dims},
               {"ranks", v.ranks},
               {"cokernel_dim", v.cokernel_dim},
               {"expected_rank", v.expected_rank}};
      if (!v.exact) {
        row["failing_position"] = v.failing_position;
        row["detail"] = v.detail;
        res.fail(row);
      }
      res.table.push_back(std::move(row));
    }
  }
  return res;
}

// ---------------------------------------------------------------- matching

void for_each_caps(int n, int cap_max, int sigma_max, std::vector<int>& caps, int sum,
                   const std::function<void(const std::vector<int>&)>& visit) {
  if (static_cast<int>(caps.size()) == n) {
    visit(caps);
    return;
  }
  for (int a = 0; a <= cap_max && sum + a <= sigma_max; ++a) {
    caps.push_back(a);
    for_each_caps(n, cap_max, sigma_max, caps, sum + a, visit);
    caps.pop_back();
  }
}

SuiteResult run_matching(const SuiteConfig& config) {
  SuiteResult res;
  std::size_t boxes = 0;
  std::size_t pairs = 0;
  for (int n = 1; n <= config.matching_n_max; ++n) {
    std::size_t n_boxes = 0;
    std::size_t n_cases = 0;
    std::size_t n_pairs = 0;
    std::vector<int> caps;
    for_each_caps(n, config.matching_cap_max, config.max_sigma, caps, 0,
                  [&](const std::vector<int>& a) {
                    ++n_boxes;
                    int sigma = 0;
                    for (int x : a) sigma += x;
                    for (int ell = 0; 2 * ell <= sigma; ++ell) {
                      ++n_cases;
                      const Matching m = leng_matching(a, ell);
                      const MatchingVerdict v = verify_matching(m);
                      const bool hall = hall_matching_exists(a, ell);
                      n_pairs += m.assignment.size();
                      if (!v.ok || !hall) {
                        res.fail({{"caps", a},
                                  {"ell", ell},
                                  {"verdict", v.ok ? "ok" : v.describe()},
                                  {"hall_matching_exists", hall}});
                      }
                    }
                  });
    res.table.push_back({{"n", n}, {"boxes", n_boxes}, {"cases", n_cases}, {"pairs", n_pairs}});
    boxes += n_boxes;
    res.cases += n_cases;
    pairs += n_pairs;
  }
  res.extra["boxes"] = boxes;
  res.extra["pairs"] = pairs;
  return res;
}

// ---------------------------------------------------------------- prop36

std::vector<std::vector<std::size_t>> coordinate_choices(std::size_t dim, std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  if (dim <= limit) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << dim); ++mask) {
      std::vector<std::size_t> pick;
      for (std::size_t i = 0; i < dim; ++i) {
        if (mask >> i & 1U) pick.push_back(i);
      }
      out.push_back(std::move(pick));
    }
    return out;
  }
  for (std::size_t i = 0; i < dim; ++i) out.push_back({i});
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::size_t> pick;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j != i) pick.push_back(j);
    }
    out.push_back(std::move(pick));
  }
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  out.push_back(std::move(all));
  return out;
}

SuiteResult run_prop36(const SuiteConfig& config) {
  SuiteResult res;
  json pairing = json::array();
  for (const auto& [n, p] : grid_pairs(config)) {
    const int top = top_degree(n, p);

    for (int ell = 0; ell <= top; ++ell) {
      ++res.cases;
      const FpMatrix w = omega_pairing_matrix(n, p, ell);
      const bool invertible = w.rows() == w.cols() && rank(w) == w.rows();
      json row{{"n", n}, {"p", p.value()}, {"ell", ell}, {"dim", w.rows()}, {"invertible", invertible}};
      if (n == 1) row["entry"] = w(0, 0);
      if (!invertible) res.fail({{"check", "pairing"}, {"n", n}, {"p", p.value()}, {"ell", ell}});
      pairing.push_back(std::move(row));
    }

    for (int ell = (top + 1) / 2; ell <= top; ++ell) {
      const RGrade grade(n, p, ell);
      std::size_t coordinate_checked = 0;
      std::size_t random_checked = 0;
      std::optional<std::int64_t> min_slack;
      auto check = [&](const GradedSubspace& v, const char* kind) {
        ++res.cases;
        const Prop36Verdict verdict = check_prop36(v);
        const auto slack = static_cast<std::int64_t>(verdict.image_dim) -
                           static_cast<std::int64_t>(verdict.subspace_dim);
        if (!min_slack || slack < *min_slack) min_slack = slack;
        if (!verdict.holds) {
          res.fail({{"check", kind},
                    {"n", n},
                    {"p", p.value()},
                    {"ell", ell},
                    {"subspace_dim", verdict.subspace_dim},
                    {"image_dim", verdict.image_dim},
                    {"basis", matrix_rows(*verdict.witness)}});
        }
      };

      for (const auto& pick : coordinate_choices(grade.dim(), config.coordinate_subset_limit)) {
        check(GradedSubspace::coordinate(n, p, ell, pick), "coordinate");
        ++coordinate_checked;
      }
      auto rng = case_rng(config.seed, {0x36, static_cast<std::uint64_t>(n), p.value(),
                                        static_cast<std::uint64_t>(ell)});
      for (std::size_t i = 0; i < config.random_subspaces_per_grade; ++i) {
        const std::size_t dim = 1 + static_cast<std::size_t>(rng() % grade.dim());
        check(random_subspace(n, p, ell, dim, rng), "random");
        ++random_checked;
      }
      res.table.push_back({{"n", n},
                           {"p", p.value()},
                           {"ell", ell},
                           {"grade_dim", grade.dim()},
                           {"coordinate_subspaces", coordinate_checked},
                           {"random_subspaces", random_checked},
                           {"min_slack", min_slack ? json(*min_slack) : json(nullptr)}});
    }
  }
  res.extra["pairing"] = pairing;
  return res;
}

// ---------------------------------------------------------------- filtration

SuiteResult run_filtration(const SuiteConfig& config) {
  SuiteResult res;
  json curves = json::array();
  for (const auto& [n, p] : grid_pairs(config)) {
    const int top = top_degree(n, p);
    for (int ell = 0; ell <= top; ++ell) {
      ++res.cases;
      const std::int64_t expected = t_rank(n, p, ell);
      const std::size_t quotient = alpha_basis(n, p, ell).size() - alpha_basis(n, p, ell + 1).size();
      json row{{"n", n}, {"p", p.value()}, {"ell", ell}, {"quotient_dim", quotient}, {"t_rank", expected}};
      bool ok = static_cast<std::int64_t>(quotient) == expected;

      if (ell >= 1) {
        const FpMatrix g = graded_nabla_matrix(n, p, ell);
        const std::size_t r = rank(g);
        row["graded_nabla_rank"] = r;
        ok = ok && r == g.cols();
      }

      const std::uint32_t sign = ell % 2 == 0 ? 1 % p.value() : p.value() - 1;
      std::size_t mismatched_rows = 0;
      const auto basis = t_basis(n, p, ell);
      for (const MultiIndex& k : basis) {
        const auto lhs = nabla_power_row(k, p);
        const auto v = v_vector(k, n, ell, p);
        for (std::size_t c = 0; c < lhs.size(); ++c) {
          if (lhs[c] != modp::mul(sign, v[c], p.value())) {
            ++mismatched_rows;
            res.fail({{"check", "nabla_power"}, {"n", n}, {"p", p.value()}, {"k", k.exponents()}, {"word", c}});
            break;
          }
        }
      }
      row["nabla_power_matches"] = mismatched_rows == 0;
      ok = ok && mismatched_rows == 0;

      if (dense_entries(basis.size(), n, ell) <= kDenseEntryLimit) {
        const std::size_t r = rank(nabla_power(n, p, ell));
        row["nabla_power_rank"] = r;
        ok = ok && r == basis.size();
      } else {
        row["nabla_power_rank"] = nullptr;
      }

      row["ok"] = ok;
      if (!ok) res.fail(row);
      res.table.push_back(std::move(row));
    }

    if (n == 1) {
      ++res.cases;
      const CurveReport c = curve_report(p);
      curves.push_back({{"p", p.value()},
                        {"ok", c.ok},
                        {"graded_entries", c.graded_entries},
                        {"ideal_dims", c.ideal_dims},
                        {"length", c.length}});
      if (!c.ok) res.fail({{"check", "curve"}, {"p", p.value()}});
    }
  }
  res.extra["curves"] = curves;
  return res;
}

// ---------------------------------------------------------------- slopes

SuiteResult run_slopes(const SuiteConfig& config) {
  SuiteResult res;
  auto expect = [&](const std::string& name, const Rational& got, const Rational& want) {
    ++res.cases;
    json row{{"check", name}, {"value", to_string(got)}, {"expected", to_string(want)}};
    if (got != want) res.fail(row);
    res.table.push_back(std::move(row));
  };

  expect("curve g=2 p=2 muW=0 pushforward slope",
         pushforward_slope(SlopeData::curve(2, Prime(2), 1, Rational(0))), Rational(1, 2));
  expect("curve g=2 p=3 profile (1,1) gap", curve_gap(2, Prime(3), RankProfile{{1, 1}}, 2),
         Rational(1, 3));
  for (std::uint32_t pv : {2U, 3U, 5U}) {
    const Prime p(pv);
    RankProfile full{std::vector<std::int64_t>(pv, 1)};
    expect("curve g=3 p=" + std::to_string(pv) + " full profile gap", curve_gap(3, p, full, full.total()),
           Rational(0));
  }

  // mu(F_*W) from the first Chern class agrees with the closed slope, and the
  // graded pieces of F^*F_*O carry degree p c_1(F_*O).
  std::size_t consistency = 0;
  for (const auto& [n, p] : grid_pairs(config)) {
    const std::int64_t pn = static_cast<std::int64_t>(word_count(static_cast<int>(p.value()), n));
    for (std::int64_t rkW = 1; rkW <= 3; ++rkW) {
      for (int kh = -2; kh <= 2; ++kh) {
        for (int c1 = -3; c1 <= 3; ++c1) {
          ++res.cases;
          ++consistency;
          const SlopeData sd = SlopeData::from_degree(n, p, rkW, Rational(c1), Rational(kh));
          const Rational via_c1 = pushforward_c1(sd) / (pn * rkW);
          if (via_c1 != pushforward_slope(sd)) {
            res.fail({{"check", "c1 vs slope"}, {"n", n}, {"p", p.value()}, {"rkW", rkW}, {"KH", kh}, {"c1WH", c1}});
          }
        }
      }
      ++res.cases;
      const Rational KH(1);
      Rational graded = 0;
      for (int ell = 0; ell <= top_degree(n, p); ++ell) graded += t_slope(n, p, ell, KH) * t_rank(n, p, ell);
      const Rational whole = pushforward_c1(SlopeData::from_degree(n, p, 1, Rational(0), KH)) *
                             static_cast<std::int64_t>(p.value());
      if (graded != whole) {
        res.fail({{"check", "graded degree"}, {"n", n}, {"p", p.value()}, {"graded", to_string(graded)},
                  {"expected", to_string(whole)}});
      }
    }
  }
  res.extra["consistency_cases"] = consistency;

  const auto pairs = grid_pairs(config);
  std::size_t profiles = 0;
  std::size_t equality_cases = 0;
  if (!pairs.empty()) {
    auto rng = case_rng(config.seed, {0x510e5});
    for (std::size_t i = 0; i < config.slope_profiles; ++i) {
      const auto& [n, p] = pairs[rng() % pairs.size()];
      const int top = top_degree(n, p);
      const int m = static_cast<int>(rng() % static_cast<std::uint64_t>(top + 1));
      RankProfile prof{std::vector<std::int64_t>(static_cast<std::size_t>(m + 1), 0)};
      for (int l = 0; l <= m; ++l) {
        auto& r = prof.ranks[static_cast<std::size_t>(l)];
        if (2 * l > top) {
          r = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(prof.ranks[static_cast<std::size_t>(top - l)] + 1));
        } else {
          r = static_cast<std::int64_t>(rng() % 7);
        }
      }
      if (prof.total() == 0) prof.ranks[0] = 1;
      ++profiles;
      ++res.cases;

      const WeightSumVerdict v = weight_sum_check(n, p, prof, ProfileHypothesis::mirror_bounded);
      bool ok = v.hypothesis_ok && v.holds;

      const SlopeData sd = SlopeData::from_slope(n, p, 1, Rational(0), Rational(1));
      const std::vector<Rational> zeros(prof.ranks.size(), Rational(0));
      const Rational gap = gap_lower_bound(sd, prof, zeros, prof.total());
      ok = ok && gap == v.direct / (Rational(n) * static_cast<std::int64_t>(p.value()) * prof.total()) &&
           gap >= 0;
      if (n == 1) {
        const Rational curve = curve_gap(1, p, prof, prof.total());
        const SlopeData g1 = SlopeData::curve(1, p, 1, Rational(0));
        ok = ok && curve == gap_lower_bound(g1, prof, zeros, prof.total());
      }
      if (v.direct == 0) {
        ++equality_cases;
        const EqualityDiagnosis d = diagnose_equality(n, p, prof);
        ok = ok && d.weight_sum_zero;
        // With r_0 > 0 the top term forces m = n(p-1), then every paired term vanishes.
        if (prof.ranks[0] > 0) ok = ok && d.full_length && d.mirror_symmetric;
      }
      if (!ok) {
        res.fail({{"check", "weight sum"},
                  {"n", n},
                  {"p", p.value()},
                  {"profile", prof.ranks},
                  {"direct", to_string(v.direct)},
                  {"rearranged", to_string(v.rearranged)},
                  {"violations", v.violations}});
      }
    }
  }
  res.extra["random_profiles"] = profiles;
  res.extra["zero_weight_profiles"] = equality_cases;
  return res;
}

// ---------------------------------------------------------------- scenarios

[[noreturn]] void field_error(std::size_t index, const std::string& field, const std::string& what) {
  throw ConfigError("scenario " + std::to_string(index) + ", field '" + field + "': " + what);
}

Rational read_rational(const json& rec, std::size_t index, const std::string& field) {
  const json& v = rec.at(field);
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ConfigError& e) {
      field_error(index, field, e.what());
    }
  }
  field_error(index, field, "expected an integer or a string \"a/b\"");
}

std::int64_t read_int(const json& rec, std::size_t index, const std::string& field) {
  const json& v = rec.at(field);
  if (!v.is_number_integer()) field_error(index, field, "expected an integer");
  return v.get<std::int64_t>();
}

json evaluate_scenario(const json& rec, std::size_t index) {
  if (!rec.is_object()) throw ConfigError("scenario " + std::to_string(index) + ": expected an object");
  static const std::set<std::string> known{"name", "n", "p", "rkW", "muW", "c1WH", "KH", "g",
                                           "profile", "instabilities", "rkE", "IWX", "hypothesis"};
  for (const auto& [key, _] : rec.items()) {
    if (!known.contains(key)) field_error(index, key, "unknown field");
  }
  for (const char* required : {"n", "p"}) {
    if (!rec.contains(required)) field_error(index, required, "missing");
  }

  const std::string name = rec.contains("name") && rec["name"].is_string()
                               ? rec["name"].get<std::string>()
                               : "scenario-" + std::to_string(index);
  const std::int64_t n = read_int(rec, index, "n");
  if (n < 1 || n > 64) field_error(index, "n", "must be between 1 and 64");
  const std::int64_t pv = read_int(rec, index, "p");
  if (pv < 2 || pv > 0x7fffffff || !is_prime(static_cast<std::uint64_t>(pv))) {
    field_error(index, "p", std::to_string(pv) + " is not a prime");
  }
  const Prime p(static_cast<std::uint32_t>(pv));
  const std::int64_t rkW = rec.contains("rkW") ? read_int(rec, index, "rkW") : 1;
  if (rkW < 1) field_error(index, "rkW", "must be positive");

  if (rec.contains("muW") == rec.contains("c1WH")) field_error(index, "muW", "give exactly one of muW, c1WH");
  if (rec.contains("KH") == rec.contains("g")) field_error(index, "KH", "give exactly one of KH, g");

  Rational KH;
  std::optional<std::int64_t> genus;
  if (rec.contains("g")) {
    genus = read_int(rec, index, "g");
    if (*genus < 0) field_error(index, "g", "must be non-negative");
    if (n != 1) field_error(index, "g", "genus describes a curve, n must be 1");
    KH = Rational(2 * *genus - 2);
  } else {
    KH = read_rational(rec, index, "KH");
  }
  const SlopeData sd = rec.contains("muW")
                           ? SlopeData::from_slope(static_cast<int>(n), p, rkW, read_rational(rec, index, "muW"), KH)
                           : SlopeData::from_degree(static_cast<int>(n), p, rkW, read_rational(rec, index, "c1WH"), KH);

  json out{{"name", name},
           {"n", n},
           {"p", pv},
           {"rkW", rkW},
           {"muW", to_string(sd.muW)},
           {"c1WH", to_string(sd.c1WH)},
           {"KH", to_string(sd.KH)},
           {"rank_pushforward", to_string(Rational(word_count(static_cast<int>(pv), static_cast<int>(n))) * rkW)},
           {"mu_pushforward", to_string(pushforward_slope(sd))},
           {"mu_pullback_pushforward", to_string(pullback_pushforward_slope(sd))},
           {"c1_pushforward", to_string(pushforward_c1(sd))}};
  json warnings = json::array();
  if (sd.KH < 0) warnings.push_back("KH < 0: stability of F_*W is not implied and no instability bound is given");
  out["kh_negative"] = sd.KH < 0;
  bool passed = true;

  if (rec.contains("IWX")) {
    const Rational iwx = read_rational(rec, index, "IWX");
    if (iwx < 0) field_error(index, "IWX", "must be non-negative");
    const InstabilityBound b = instability_bound(sd, iwx);
    out["instability_bound"] = b.bound ? json(to_string(*b.bound)) : json(nullptr);
  }

  if (rec.contains("profile")) {
    const json& pj = rec["profile"];
    if (!pj.is_array() || pj.empty()) field_error(index, "profile", "expected a non-empty array of integers");
    RankProfile prof;
    for (const json& r : pj) {
      if (!r.is_number_integer()) field_error(index, "profile", "expected a non-empty array of integers");
      prof.ranks.push_back(r.get<std::int64_t>());
    }
    if (prof.top() > top_degree(static_cast<int>(n), p)) {
      field_error(index, "profile", "more than n(p-1)+1 entries");
    }

    ProfileHypothesis hyp = n == 1 ? ProfileHypothesis::monotone : ProfileHypothesis::mirror_bounded;
    if (rec.contains("hypothesis")) {
      const json& h = rec["hypothesis"];
      const std::string s = h.is_string() ? h.get<std::string>() : "";
      if (s == "monotone") {
        hyp = ProfileHypothesis::monotone;
      } else if (s == "mirror") {
        hyp = ProfileHypothesis::mirror_bounded;
      } else if (s == "none") {
        hyp = ProfileHypothesis::none;
      } else {
        field_error(index, "hypothesis", "expected \"monotone\", \"mirror\" or \"none\"");
      }
    }

    const auto violations = profile_violations(static_cast<int>(n), p, prof, hyp, rkW);
    out["hypothesis_violations"] = violations;
    out["hypothesis_ok"] = violations.empty();
    for (std::int64_t r : prof.ranks) {
      if (r < 0) field_error(index, "profile", "ranks must be non-negative");
    }

    const std::int64_t rkE = rec.contains("rkE") ? read_int(rec, index, "rkE") : prof.total();
    if (rkE != prof.total()) field_error(index, "rkE", "differs from the sum of the profile");
    if (rkE <= 0) field_error(index, "profile", "sum of ranks must be positive");

    std::vector<Rational> inst(prof.ranks.size(), Rational(0));
    if (rec.contains("instabilities")) {
      const json& ij = rec["instabilities"];
      if (!ij.is_array() || ij.size() != prof.ranks.size()) {
        field_error(index, "instabilities", "expected one value per profile entry");
      }
      for (std::size_t l = 0; l < ij.size(); ++l) {
        json holder{{"instabilities", ij[l]}};
        inst[l] = read_rational(holder, index, "instabilities");
        if (inst[l] < 0) field_error(index, "instabilities", "must be non-negative");
      }
    }

    const WeightSumVerdict w = weight_sum_check(static_cast<int>(n), p, prof, hyp);
    out["weight_sum"] = to_string(w.direct);
    out["weight_sum_rearranged"] = to_string(w.rearranged);
    out["gap_lower_bound"] = to_string(gap_lower_bound(sd, prof, inst, rkE));
    if (genus && prof.ranks.size() <= p.value()) {
      out["curve_gap"] = to_string(curve_gap(*genus, p, prof, rkE));
    }
    const EqualityDiagnosis d = diagnose_equality(static_cast<int>(n), p, prof);
    out["equality_diagnosis"] = {{"weight_sum_zero", d.weight_sum_zero},
                                 {"full_length", d.full_length},
                                 {"mirror_symmetric", d.mirror_symmetric},
                                 {"constant_ranks", d.constant_ranks}};
    const bool identity = w.direct == w.rearranged;
    const bool sign = !w.hypothesis_ok || w.direct >= 0;
    out["weight_sum_identity"] = identity;
    out["weight_sum_nonnegative"] = w.direct >= 0;
    passed = identity && sign;
  }

  out["warnings"] = warnings;
  out["passed"] = passed;
  return out;
}

}  // namespace

std::string_view suite_name(Suite s) {
  switch (s) {
    case Suite::ranks: return "ranks";
    case Suite::koszul: return "koszul";
    case Suite::matching: return "matching";
    case Suite::prop36: return "prop36";
    case Suite::filtration: return "filtration";
    case Suite::slopes: return "slopes";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : all_suites()) {
    if (suite_name(s) == name) return s;
  }
  throw ConfigError("unknown suite '" + std::string(name) + "'");
}

std::vector<Suite> all_suites() {
  return {Suite::ranks, Suite::koszul, Suite::matching, Suite::prop36, Suite::filtration, Suite::slopes};
}

void validate(const SuiteConfig& c) {
  if (c.n_min < 1) throw ConfigError("n_min must be at least 1");
  if (c.n_max < c.n_min) throw ConfigError("n_max must be at least n_min");
  if (c.n_max > kHardMaxN) throw ConfigError("n_max must be at most " + std::to_string(kHardMaxN));
  for (std::uint32_t p : c.primes) {
    if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not a prime");
  }
  if (c.max_ambient_dim < 1 || c.max_ambient_dim > kHardMaxAmbient) {
    throw ConfigError("max_ambient_dim must be between 1 and " + std::to_string(kHardMaxAmbient));
  }
  if (c.sigma_limit < 0) throw ConfigError("sigma_limit must be non-negative");
  if (c.max_sigma < 0 || c.max_sigma > c.sigma_limit) {
    throw ConfigError("max_sigma must be between 0 and the hard limit " + std::to_string(c.sigma_limit));
  }
  if (c.matching_n_max < 1 || c.matching_n_max > kHardMaxN) {
    throw ConfigError("matching_n_max must be between 1 and " + std::to_string(kHardMaxN));
  }
  if (c.matching_cap_max < 0 || c.matching_cap_max > c.sigma_limit) {
    throw ConfigError("matching_cap_max must be between 0 and " + std::to_string(c.sigma_limit));
  }
  if (c.random_subspaces_per_grade > kHardMaxRandomSubspaces) {
    throw ConfigError("random_subspaces_per_grade must be at most " + std::to_string(kHardMaxRandomSubspaces));
  }
  if (c.coordinate_subset_limit > 20) throw ConfigError("coordinate_subset_limit must be at most 20");
  if (c.slope_profiles > kHardMaxProfiles) {
    throw ConfigError("slope_profiles must be at most " + std::to_string(kHardMaxProfiles));
  }
  std::set<Suite> seen;
  for (Suite s : c.suites) {
    if (!seen.insert(s).second) throw ConfigError("suite '" + std::string(suite_name(s)) + "' listed twice");
  }
}

std::vector<std::pair<int, Prime>> grid_pairs(const SuiteConfig& config) {
  std::set<std::uint32_t> primes(config.primes.begin(), config.primes.end());
  std::vector<std::pair<int, Prime>> out;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (std::uint32_t p : primes) {
      std::uint64_t ambient = 1;
      bool fits = true;
      for (int i = 0; i < n && fits; ++i) {
        ambient *= p;
        fits = ambient <= config.max_ambient_dim;
      }
      if (fits) out.emplace_back(n, Prime(p));
    }
  }
  return out;
}

json config_to_json(const SuiteConfig& c) {
  json suites = json::array();
  for (Suite s : c.suites) suites.push_back(suite_name(s));
  return {{"n_min", c.n_min},
          {"n_max", c.n_max},
          {"primes", c.primes},
          {"max_ambient_dim", c.max_ambient_dim},
          {"max_sigma", c.max_sigma},
          {"sigma_limit", c.sigma_limit},
          {"matching_n_max", c.matching_n_max},
          {"matching_cap_max", c.matching_cap_max},
          {"random_subspaces_per_grade", c.random_subspaces_per_grade},
          {"coordinate_subset_limit", c.coordinate_subset_limit},
          {"slope_profiles", c.slope_profiles},
          {"seed", c.seed},
          {"suites", suites},
          {"rng", "mt19937_64, std::seed_seq over (seed, case key), draws rng() % bound"}};
}

json run_suite(const SuiteConfig& config) {
  validate(config);
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  json report{{"tool", kToolName}, {"version", kVersion}, {"config", config_to_json(config)}};
  json suites = json::object();
  json timings = json::object();
  bool passed = true;

  std::vector<Suite> order = config.suites;
  std::sort(order.begin(), order.end());
  for (Suite s : order) {
    const auto t0 = clock::now();
    SuiteResult r;
    switch (s) {
      case Suite::ranks: r = run_ranks(config); break;
      case Suite::koszul: r = run_koszul(config); break;
      case Suite::matching: r = run_matching(config); break;
      case Suite::prop36: r = run_prop36(config); break;
      case Suite::filtration: r = run_filtration(config); break;
      case Suite::slopes: r = run_slopes(config); break;
    }
    const auto ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    timings[std::string(suite_name(s))] = ms;
    passed = passed && r.failure_count == 0;
    suites[std::string(suite_name(s))] = r.to_json();
  }

  json skipped = json::array();
  std::set<std::uint32_t> primes(config.primes.begin(), config.primes.end());
  const auto kept = grid_pairs(config);
  for (int n = config.n_min; n <= config.n_max; ++n) {
    for (std::uint32_t p : primes) {
      const bool in_grid = std::any_of(kept.begin(), kept.end(), [&](const auto& np) {
        return np.first == n && np.second.value() == p;
      });
      if (!in_grid) skipped.push_back({{"n", n}, {"p", p}, {"reason", "p^n exceeds max_ambient_dim"}});
    }
  }

  report["suites"] = suites;
  report["skipped_pairs"] = skipped;
  report["passed"] = passed;
  timings["total"] = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  report["timings_ms"] = timings;
  return report;
}

json strip_timings(json report) {
  report.erase("timings_ms");
  return report;
}

json parse_scenario_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
  }
}

json run_scenarios(const json& doc) {
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("scenarios")) throw ConfigError("missing top-level 'scenarios' array");
    list = &doc["scenarios"];
  }
  if (!list->is_array()) throw ConfigError("'scenarios' must be an array");

  json results = json::array();
  bool passed = true;
  for (std::size_t i = 0; i < list->size(); ++i) {
    json r;
    try {
      r = evaluate_scenario((*list)[i], i);
    } catch (const PreconditionError& e) {
      throw ConfigError("scenario " + std::to_string(i) + ": " + e.what());
    } catch (const DimensionError& e) {
      throw ConfigError("scenario " + std::to_string(i) + ": " + e.what());
    }
    passed = passed && r["passed"].get<bool>();
    results.push_back(std::move(r));
  }
  return {{"tool", kToolName}, {"version", kVersion}, {"passed", passed}, {"scenarios", results}};
}

}  // namespace frobpush
