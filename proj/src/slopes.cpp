#include "frobpush/slopes.hpp"

#include <algorithm>
#include <numeric>

#include "frobpush/errors.hpp"
#include "frobpush/t_rep.hpp"
#include "frobpush/trunc_algebra.hpp"

namespace frobpush {

using boost::multiprecision::cpp_int;

namespace {

cpp_int parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
  if (i == text.size()) throw ConfigError("malformed rational '" + std::string(whole) + "'");
  cpp_int value = 0;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ConfigError("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return negative ? cpp_int(-value) : value;
}

cpp_int pow_int(std::int64_t base, int exponent) {
  cpp_int r = 1;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

void require_positive_rank(std::int64_t rk, const char* what) {
  if (rk <= 0) throw PreconditionError(std::string(what) + " must be positive");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  cpp_int num = parse_integer(text.substr(0, slash), text);
  cpp_int den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

std::string to_string(const Rational& q) { return q.str(); }

SlopeData SlopeData::from_slope(int n, Prime p, std::int64_t rkW, Rational muW, Rational KH) {
  if (n < 1) throw PreconditionError("dimension must be at least 1");
  require_positive_rank(rkW, "rk W");
  Rational c1 = muW * rkW;
  return {n, p, rkW, std::move(muW), std::move(KH), std::move(c1)};
}

SlopeData SlopeData::from_degree(int n, Prime p, std::int64_t rkW, Rational c1WH, Rational KH) {
  if (n < 1) throw PreconditionError("dimension must be at least 1");
  require_positive_rank(rkW, "rk W");
  Rational mu = c1WH / rkW;
  return {n, p, rkW, std::move(mu), std::move(KH), std::move(c1WH)};
}

SlopeData SlopeData::curve(std::int64_t genus, Prime p, std::int64_t rkW, Rational muW) {
  if (genus < 0) throw PreconditionError("genus must be non-negative");
  return from_slope(1, p, rkW, std::move(muW), Rational(2 * genus - 2));
}

Rational pullback_pushforward_slope(const SlopeData& sd) {
  const std::int64_t p = sd.p.value();
  return Rational(p - 1, 2) * sd.KH + sd.muW;
}

Rational pushforward_slope(const SlopeData& sd) {
  return pullback_pushforward_slope(sd) / static_cast<std::int64_t>(sd.p.value());
}

Rational pushforward_c1(const SlopeData& sd) {
  const std::int64_t p = sd.p.value();
  const cpp_int pn1 = pow_int(p, sd.n - 1);
  const cpp_int pn = pn1 * p;
  return Rational(sd.rkW * (pn - pn1), 2) * sd.KH + Rational(pn1) * sd.c1WH;
}

Rational t_slope(int n, Prime p, int ell, const Rational& KH) {
  const int top = top_degree(n, p);
  if (ell < 0 || ell > top) {
    throw PreconditionError("T^l slope needs 0 <= l <= " + std::to_string(top));
  }
  return Rational(ell, n) * KH;
}

std::int64_t RankProfile::total() const {
  return std::accumulate(ranks.begin(), ranks.end(), std::int64_t{0});
}

std::vector<std::string> profile_violations(int n, Prime p, const RankProfile& profile,
                                            ProfileHypothesis hypothesis,
                                            std::optional<std::int64_t> rkW) {
  std::vector<std::string> out;
  const int top = top_degree(n, p);
  const int m = profile.top();
  if (m > top) {
    out.push_back("profile has " + std::to_string(m + 1) + " entries, at most " +
                  std::to_string(top + 1) + " allowed");
  }
  for (int l = 0; l <= m; ++l) {
    const std::int64_t r = profile.ranks[static_cast<std::size_t>(l)];
    if (r < 0) out.push_back("r_" + std::to_string(l) + " is negative");
    if (rkW && l <= top && r > *rkW * t_rank(n, p, l)) {
      out.push_back("r_" + std::to_string(l) + " = " + std::to_string(r) + " exceeds rkW * rank T^" +
                    std::to_string(l) + " = " + std::to_string(*rkW * t_rank(n, p, l)));
    }
  }
  if (hypothesis == ProfileHypothesis::monotone) {
    for (int l = 1; l <= m; ++l) {
      if (profile.ranks[static_cast<std::size_t>(l)] > profile.ranks[static_cast<std::size_t>(l - 1)]) {
        out.push_back("not monotone: r_" + std::to_string(l) + " > r_" + std::to_string(l - 1));
      }
    }
  } else if (hypothesis == ProfileHypothesis::mirror_bounded) {
    for (int l = 0; l <= std::min(m, top); ++l) {
      if (2 * l <= top) continue;
      if (profile.ranks[static_cast<std::size_t>(l)] > profile.ranks[static_cast<std::size_t>(top - l)]) {
        out.push_back("mirror bound fails: r_" + std::to_string(l) + " > r_" + std::to_string(top - l));
      }
    }
  }
  return out;
}

namespace {

std::int64_t rank_at(const RankProfile& profile, int l) {
  return l >= 0 && l <= profile.top() ? profile.ranks[static_cast<std::size_t>(l)] : 0;
}

void require_fits(int n, Prime p, const RankProfile& profile) {
  if (profile.top() > top_degree(n, p)) {
    throw PreconditionError("profile longer than n(p-1) + 1 entries");
  }
}

}  // namespace

Rational weight_sum(int n, Prime p, const RankProfile& profile) {
  require_fits(n, p, profile);
  const int top = top_degree(n, p);
  Rational twice = 0;
  for (int l = 0; l <= profile.top(); ++l) twice += Rational(top - 2 * l) * rank_at(profile, l);
  return twice / 2;
}

Rational rearranged_weight_sum(int n, Prime p, const RankProfile& profile) {
  require_fits(n, p, profile);
  const int top = top_degree(n, p);
  const int m = profile.top();
  Rational twice = 0;
  for (int l = m + 1; l <= top; ++l) twice += Rational(2 * l - top) * rank_at(profile, top - l);
  for (int l = 0; l <= m; ++l) {
    if (2 * l <= top) continue;
    twice += Rational(2 * l - top) * (rank_at(profile, top - l) - rank_at(profile, l));
  }
  return twice / 2;
}

Rational gap_lower_bound(const SlopeData& sd, const RankProfile& profile,
                         std::span<const Rational> instabilities, std::int64_t rkE) {
  require_positive_rank(rkE, "rk E");
  if (profile.total() != rkE) {
    throw PreconditionError("rk E = " + std::to_string(rkE) + " differs from sum of ranks " +
                            std::to_string(profile.total()));
  }
  if (instabilities.size() < profile.ranks.size()) {
    throw PreconditionError("instabilities must be given for every l <= m");
  }
  const std::int64_t p = sd.p.value();
  Rational penalty = 0;
  for (std::size_t l = 0; l < profile.ranks.size(); ++l) {
    if (instabilities[l] < 0) throw PreconditionError("instabilities must be non-negative");
    penalty += instabilities[l] * profile.ranks[l];
  }
  return sd.KH / (Rational(sd.n) * p * rkE) * weight_sum(sd.n, sd.p, profile) -
         penalty / (Rational(p) * rkE);
}

Rational curve_gap(std::int64_t genus, Prime p, const RankProfile& profile, std::int64_t rkE) {
  require_positive_rank(rkE, "rk E");
  if (profile.total() != rkE) {
    throw PreconditionError("rk E = " + std::to_string(rkE) + " differs from sum of ranks " +
                            std::to_string(profile.total()));
  }
  if (profile.ranks.size() > p.value()) throw PreconditionError("curve profile longer than p");
  const std::int64_t pv = p.value();
  return Rational(2 * genus - 2, pv * rkE) * weight_sum(1, p, profile);
}

WeightSumVerdict weight_sum_check(int n, Prime p, const RankProfile& profile,
                                  ProfileHypothesis hypothesis) {
  WeightSumVerdict v{false, false, 0, 0, profile_violations(n, p, profile, hypothesis)};
  v.hypothesis_ok = v.violations.empty();
  v.direct = weight_sum(n, p, profile);
  v.rearranged = rearranged_weight_sum(n, p, profile);
  v.holds = v.direct >= 0 && v.direct == v.rearranged;
  return v;
}

EqualityDiagnosis diagnose_equality(int n, Prime p, const RankProfile& profile) {
  const int top = top_degree(n, p);
  EqualityDiagnosis d{weight_sum(n, p, profile) == 0, profile.top() == top, true, true};
  for (int l = 0; l <= top; ++l) {
    if (rank_at(profile, l) != rank_at(profile, top - l)) d.mirror_symmetric = false;
  }
  for (int l = 1; l <= profile.top(); ++l) {
    if (rank_at(profile, l) != rank_at(profile, 0)) d.constant_ranks = false;
  }
  return d;
}

InstabilityBound instability_bound(const SlopeData& sd, const Rational& IWX) {
  if (IWX < 0) throw PreconditionError("I(W, X) must be non-negative");
  if (sd.KH < 0) {
    return {std::nullopt, false, "K_X.H^{n-1} < 0: instability bound not asserted"};
  }
  const Rational factor(pow_int(sd.p.value(), sd.n - 1) * sd.rkW);
  return {factor * IWX, true, ""};
}

}  // namespace frobpush
