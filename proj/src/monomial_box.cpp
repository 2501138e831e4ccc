#include "frobpush/monomial_box.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "frobpush/errors.hpp"

namespace frobpush {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw PreconditionError("multi-index entries must be non-negative");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

int MultiIndex::degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

bool MultiIndex::dominated_by(const MultiIndex& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

std::string to_string(const MultiIndex& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

Box::Box(std::vector<int> caps, int degree) : caps_(std::move(caps)), degree_(degree) {
  if (caps_.empty()) throw DimensionError("a box needs at least one coordinate");
  for (int a : caps_) {
    if (a < 0) throw PreconditionError("box caps must be non-negative");
  }
}

int Box::sigma() const noexcept { return std::accumulate(caps_.begin(), caps_.end(), 0); }

bool Box::contains(const MultiIndex& v) const {
  if (v.size() != caps_.size() || v.degree() != degree_) return false;
  for (std::size_t i = 0; i < caps_.size(); ++i) {
    if (v[i] > caps_[i]) return false;
  }
  return true;
}

std::vector<MultiIndex> Box::elements() const { return enumerate_box(caps_, degree_); }

std::size_t Box::size() const { return box_size_formula(caps_, degree_); }

namespace {

void enumerate_into(const std::vector<int>& caps, const std::vector<int>& suffix,
                    std::size_t i, int remaining, std::vector<int>& current,
                    std::vector<MultiIndex>& out) {
  if (i == caps.size()) {
    out.emplace_back(current);
    return;
  }
  const int lo = std::max(0, remaining - suffix[i + 1]);
  const int hi = std::min(caps[i], remaining);
  for (int v = lo; v <= hi; ++v) {
    current[i] = v;
    enumerate_into(caps, suffix, i + 1, remaining - v, current, out);
  }
}

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace

std::vector<MultiIndex> enumerate_box(const std::vector<int>& caps, int degree) {
  if (caps.empty()) throw DimensionError("a box needs at least one coordinate");
  for (int a : caps) {
    if (a < 0) throw PreconditionError("box caps must be non-negative");
  }
  std::vector<MultiIndex> out;
  std::vector<int> suffix(caps.size() + 1, 0);
  for (std::size_t i = caps.size(); i-- > 0;) suffix[i] = suffix[i + 1] + caps[i];
  if (degree < 0 || degree > suffix[0]) return out;
  std::vector<int> current(caps.size(), 0);
  enumerate_into(caps, suffix, 0, degree, current, out);
  return out;
}

std::size_t box_size_formula(const std::vector<int>& caps, int degree) {
  if (degree < 0) return 0;
  const std::size_t n = caps.size();
  // Stars and bars, subtracting solutions where a subset J of coordinates
  // exceeds its cap.
  std::int64_t total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t shift = 0;
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        shift += caps[i] + 1;
        ++bits;
      }
    }
    const std::int64_t rest = degree - shift;
    if (rest < 0) continue;
    const auto term = static_cast<std::int64_t>(
        binomial_u64(rest + static_cast<std::int64_t>(n) - 1, static_cast<std::int64_t>(n) - 1));
    total += (bits % 2 ? -term : term);
  }
  return static_cast<std::size_t>(total);
}

namespace {

using RawPairs = std::vector<std::pair<std::vector<int>, std::vector<int>>>;

class LengCache {
 public:
  std::shared_ptr<const RawPairs> find(const std::vector<int>& caps, int ell) {
    std::lock_guard lock(mutex_);
    auto it = table_.find({caps, ell});
    return it == table_.end() ? nullptr : it->second;
  }
  void store(const std::vector<int>& caps, int ell, std::shared_ptr<const RawPairs> value) {
    std::lock_guard lock(mutex_);
    table_[{caps, ell}] = std::move(value);
  }
  std::size_t size() {
    std::lock_guard lock(mutex_);
    return table_.size();
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::vector<int>, int>, std::shared_ptr<const RawPairs>> table_;
};

LengCache& leng_cache() {
  static LengCache cache;
  return cache;
}

// Inverse of (v_1..v_{n-2}, v_{n-1}, v_n) |-> (v_1..v_{n-2}, v_{n-1} + v_n)
// on the set where v_{n-1} = a_{n-1} or v_n = 0.
std::vector<int> unmerge_last(const std::vector<int>& w, int cap_second_last) {
  std::vector<int> v(w.begin(), w.end() - 1);
  const int merged = w.back();
  if (merged <= cap_second_last) {
    v.push_back(merged);
    v.push_back(0);
  } else {
    v.push_back(cap_second_last);
    v.push_back(merged - cap_second_last);
  }
  return v;
}

std::shared_ptr<const RawPairs> leng_raw(const std::vector<int>& caps, int ell) {
  if (auto hit = leng_cache().find(caps, ell)) return hit;

  RawPairs out;
  const std::size_t n = caps.size();
  std::vector<std::size_t> nonzero;
  for (std::size_t i = 0; i < n; ++i) {
    if (caps[i] > 0) nonzero.push_back(i);
  }

  if (nonzero.size() < n) {
    std::vector<int> reduced;
    for (std::size_t i : nonzero) reduced.push_back(caps[i]);
    for (const auto& [s, t] : *leng_raw(reduced, ell)) {
      std::vector<int> src(n, 0), dst(n, 0);
      for (std::size_t j = 0; j < nonzero.size(); ++j) {
        src[nonzero[j]] = s[j];
        dst[nonzero[j]] = t[j];
      }
      out.emplace_back(std::move(src), std::move(dst));
    }
  } else if (n == 0) {
    if (ell == 0) out.emplace_back(std::vector<int>{}, std::vector<int>{});
  } else if (n == 1) {
    if (ell >= 0 && ell <= caps[0]) out.emplace_back(std::vector<int>{ell}, std::vector<int>{caps[0] - ell});
  } else if (ell >= 0) {
    const int a_second_last = caps[n - 2];

    // S-branch: v_{n-1} = a_{n-1} or v_n = 0, identified with the box in
    // n - 1 coordinates whose last cap is a_{n-1} + a_n.
    std::vector<int> merged(caps.begin(), caps.end() - 1);
    merged.back() += caps[n - 1];
    for (const auto& [s, w] : *leng_raw(merged, ell)) {
      out.emplace_back(unmerge_last(s, a_second_last), unmerge_last(w, a_second_last));
    }

    // C-branch: v_{n-1} < a_{n-1} and v_n >= 1, shifted down in the last
    // coordinate into the box with caps (.., a_{n-1} - 1, a_n - 1).
    if (ell >= 1) {
      std::vector<int> shrunk = caps;
      --shrunk[n - 2];
      --shrunk[n - 1];
      for (auto [s, w] : *leng_raw(shrunk, ell - 1)) {
        ++s.back();
        ++w.back();
        out.emplace_back(std::move(s), std::move(w));
      }
    }
  }

  std::sort(out.begin(), out.end());
  auto value = std::make_shared<const RawPairs>(std::move(out));
  leng_cache().store(caps, ell, value);
  return value;
}

}  // namespace

Matching leng_matching(const std::vector<int>& caps, int ell) {
  Box source(caps, ell);
  const int sigma = source.sigma();
  if (2 * ell > sigma) {
    throw PreconditionError("matching requires 2*l <= sigma (l = " + std::to_string(ell) +
                            ", sigma = " + std::to_string(sigma) + ")");
  }
  Matching m{source, Box(caps, sigma - ell), {}};
  for (const auto& [s, t] : *leng_raw(caps, ell)) {
    m.assignment.emplace(MultiIndex(s), MultiIndex(t));
  }
  return m;
}

std::size_t leng_cache_size() { return leng_cache().size(); }

std::string MatchingVerdict::describe() const {
  auto fmt = [](const std::optional<MultiIndex>& v) { return v ? to_string(*v) : "-"; };
  switch (violation) {
    case MatchingViolation::none:
      return "ok";
    case MatchingViolation::missing_source:
      return "no image for " + fmt(source);
    case MatchingViolation::extra_source:
      return "assignment key " + fmt(source) + " is outside the source box";
    case MatchingViolation::image_off_target:
      return "image " + fmt(image) + " of " + fmt(source) + " is outside the target box";
    case MatchingViolation::not_dominating:
      return fmt(source) + " is not dominated by its image " + fmt(image);
    case MatchingViolation::not_injective:
      return "image " + fmt(image) + " of " + fmt(source) + " is already taken";
  }
  return "unknown";
}

MatchingVerdict verify_matching(const Matching& m) {
  auto fail = [](MatchingViolation kind, const MultiIndex& v, std::optional<MultiIndex> w) {
    return MatchingVerdict{false, kind, v, std::move(w)};
  };
  std::set<MultiIndex> used;
  for (const MultiIndex& v : m.source.elements()) {
    auto it = m.assignment.find(v);
    if (it == m.assignment.end()) return fail(MatchingViolation::missing_source, v, std::nullopt);
    const MultiIndex& w = it->second;
    if (!m.target.contains(w)) return fail(MatchingViolation::image_off_target, v, w);
    if (!v.dominated_by(w)) return fail(MatchingViolation::not_dominating, v, w);
    if (!used.insert(w).second) return fail(MatchingViolation::not_injective, v, w);
  }
  for (const auto& [v, w] : m.assignment) {
    if (!m.source.contains(v)) return fail(MatchingViolation::extra_source, v, w);
  }
  return {};
}

namespace {

bool augment(std::size_t left, const std::vector<std::vector<std::size_t>>& adj,
             std::vector<char>& visited, std::vector<std::ptrdiff_t>& match_right) {
  for (std::size_t right : adj[left]) {
    if (visited[right]) continue;
    visited[right] = 1;
    if (match_right[right] < 0 ||
        augment(static_cast<std::size_t>(match_right[right]), adj, visited, match_right)) {
      match_right[right] = static_cast<std::ptrdiff_t>(left);
      return true;
    }
  }
  return false;
}

}  // namespace

bool hall_matching_exists(const std::vector<int>& caps, int ell) {
  const int sigma = std::accumulate(caps.begin(), caps.end(), 0);
  const auto left = enumerate_box(caps, ell);
  const auto right = enumerate_box(caps, sigma - ell);
  if (left.size() > right.size()) return false;

  std::vector<std::vector<std::size_t>> adj(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (left[i].dominated_by(right[j])) adj[i].push_back(j);
    }
  }
  std::vector<std::ptrdiff_t> match_right(right.size(), -1);
  for (std::size_t i = 0; i < left.size(); ++i) {
    std::vector<char> visited(right.size(), 0);
    if (!augment(i, adj, visited, match_right)) return false;
  }
  return true;
}

}  // namespace frobpush
