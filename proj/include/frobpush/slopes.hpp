#pragma once

// Slope, degree and instability formulas for F_* W, evaluated in exact
// rational arithmetic. Geometric inputs (intersection numbers, instabilities
// of W (x) T^l) are supplied by the caller.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "frobpush/fp_linalg.hpp"

namespace frobpush {

using Rational = boost::multiprecision::cpp_rational;

/// Accepts "a", "-a", "a/b"; throws ConfigError on malformed text or b = 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Invariants of W on an n-dimensional X with polarization H:
/// muW = c1WH / rkW, KH = K_X . H^{n-1} (2g - 2 for a curve of genus g).
struct SlopeData {
  int n;
  Prime p;
  std::int64_t rkW;
  Rational muW;
  Rational KH;
  Rational c1WH;

  static SlopeData from_slope(int n, Prime p, std::int64_t rkW, Rational muW, Rational KH);
  static SlopeData from_degree(int n, Prime p, std::int64_t rkW, Rational c1WH, Rational KH);
  static SlopeData curve(std::int64_t genus, Prime p, std::int64_t rkW, Rational muW);
};

/// mu(F_* W) = ((p-1)/2 KH + muW) / p.
Rational pushforward_slope(const SlopeData& sd);

/// mu(F^* F_* W) = p mu(F_* W) = (p-1)/2 KH + muW.
Rational pullback_pushforward_slope(const SlopeData& sd);

/// c_1(F_* W) . H^{n-1} = rkW (p^n - p^{n-1})/2 KH + p^{n-1} c1WH.
Rational pushforward_c1(const SlopeData& sd);

/// mu(T^l(Omega^1)) = l KH / n, for 0 <= l <= n(p-1).
Rational t_slope(int n, Prime p, int ell, const Rational& KH);

/// Ranks r_0..r_m of the graded pieces of an induced filtration.
struct RankProfile {
  std::vector<std::int64_t> ranks;

  std::int64_t total() const;
  /// m, or -1 for an empty profile.
  int top() const { return static_cast<int>(ranks.size()) - 1; }
};

enum class ProfileHypothesis {
  none,
  monotone,        // r_0 >= r_1 >= .. >= r_m (curve case)
  mirror_bounded,  // r_l <= r_{n(p-1)-l} whenever l > n(p-1)/2
};

/// Human-readable violations of the shape constraints: negative entries,
/// m > n(p-1), the selected hypothesis, and r_l <= rkW t_rank(n,p,l) when
/// rkW is given. Empty when the profile is admissible.
std::vector<std::string> profile_violations(int n, Prime p, const RankProfile& profile,
                                            ProfileHypothesis hypothesis,
                                            std::optional<std::int64_t> rkW = std::nullopt);

/// sum_l (n(p-1)/2 - l) r_l.
Rational weight_sum(int n, Prime p, const RankProfile& profile);

/// The same sum regrouped as
///   sum_{l=m+1}^{N} (l - N/2) r_{N-l} + sum_{N/2 < l <= m} (l - N/2)(r_{N-l} - r_l),
/// N = n(p-1), with r_j = 0 for j > m.
Rational rearranged_weight_sum(int n, Prime p, const RankProfile& profile);

/// Lower bound for mu(F_*W) - mu(E):
///   KH / (n p rkE) sum_l (n(p-1)/2 - l) r_l  -  (1/p) sum_l r_l I_l / rkE.
/// rkE must equal sum r_l and be positive; `instabilities` must cover 0..m.
Rational gap_lower_bound(const SlopeData& sd, const RankProfile& profile,
                         std::span<const Rational> instabilities, std::int64_t rkE);

/// Curve form: (2g - 2) / (p rkE) sum_l ((p-1)/2 - l) r_l, profile length <= p.
Rational curve_gap(std::int64_t genus, Prime p, const RankProfile& profile, std::int64_t rkE);

struct WeightSumVerdict {
  bool holds;           // direct >= 0 and direct == rearranged
  bool hypothesis_ok;
  Rational direct;
  Rational rearranged;
  std::vector<std::string> violations;
};

WeightSumVerdict weight_sum_check(int n, Prime p, const RankProfile& profile,
                                  ProfileHypothesis hypothesis);

/// Necessary conditions for mu(F_*W) - mu(E) = 0 when KH > 0 and all
/// instabilities vanish.
struct EqualityDiagnosis {
  bool weight_sum_zero;
  bool full_length;       // m = n(p-1)
  bool mirror_symmetric;  // r_l = r_{n(p-1)-l} for all l
  bool constant_ranks;    // r_0 = .. = r_m
};

EqualityDiagnosis diagnose_equality(int n, Prime p, const RankProfile& profile);

struct InstabilityBound {
  std::optional<Rational> bound;  // empty when KH < 0
  bool hypothesis_ok;
  std::string warning;
};

/// I(F_* W) <= p^{n-1} rkW I(W, X), asserted only when KH >= 0.
InstabilityBound instability_bound(const SlopeData& sd, const Rational& IWX);

}  // namespace frobpush
