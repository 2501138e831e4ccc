#pragma once

// Bounded multi-indices: the boxes
//
//   M^l_n(a) = { v in Z^n : 0 <= v_i <= a_i, sum v_i = l },
//
// the componentwise dominance order on them, and dominance-respecting
// injections M^l -> M^{sigma - l} (sigma = sum a_i) for l <= sigma / 2.
// Two independent routes are provided: the recursive constructive matching
// and an augmenting-path bipartite matching oracle.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frobpush {

/// Exponent vector (k_1, ..., k_n) with non-negative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  std::size_t size() const noexcept { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  int degree() const noexcept;

  /// Componentwise v <= w; vectors of different length never compare.
  bool dominated_by(const MultiIndex& other) const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> exps_;
};

std::string to_string(const MultiIndex& v);

/// The set M^degree_n(caps).
class Box {
 public:
  Box(std::vector<int> caps, int degree);

  const std::vector<int>& caps() const noexcept { return caps_; }
  int degree() const noexcept { return degree_; }
  int sigma() const noexcept;
  std::size_t n() const noexcept { return caps_.size(); }

  bool contains(const MultiIndex& v) const;
  /// Elements in ascending lexicographic order.
  std::vector<MultiIndex> elements() const;
  std::size_t size() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<int> caps_;
  int degree_;
};

/// All v with 0 <= v_i <= caps_i and sum v_i = degree, lexicographically
/// ascending. Out-of-range degrees give an empty list.
std::vector<MultiIndex> enumerate_box(const std::vector<int>& caps, int degree);

/// |M^degree_n(caps)| by inclusion-exclusion over the violated caps.
std::size_t box_size_formula(const std::vector<int>& caps, int degree);

struct Matching {
  Box source;
  Box target;
  std::map<MultiIndex, MultiIndex> assignment;
};

/// The recursive dominance matching M^l(caps) -> M^{sigma-l}(caps).
/// Requires 2l <= sigma, otherwise throws PreconditionError. Zero caps are
/// removed before recursing (their coordinate is forced to 0) and restored
/// afterwards. Results are memoized on (caps, l) in a process-wide cache.
Matching leng_matching(const std::vector<int>& caps, int ell);

enum class MatchingViolation {
  none,
  missing_source,   // a source element has no image
  extra_source,     // the assignment contains a key outside the source box
  image_off_target, // an image is not in the target box
  not_dominating,   // v <= phi(v) fails
  not_injective,    // two sources share an image
};

struct MatchingVerdict {
  bool ok = true;
  MatchingViolation violation = MatchingViolation::none;
  std::optional<MultiIndex> source;
  std::optional<MultiIndex> image;

  std::string describe() const;
};

/// Checks totality, injectivity, image containment and dominance. Source
/// elements are visited in lexicographic order and the first failure is
/// reported.
MatchingVerdict verify_matching(const Matching& m);

/// True iff M^l(caps) can be matched injectively into M^{sigma-l}(caps) along
/// the dominance relation (Kuhn's augmenting paths).
bool hall_matching_exists(const std::vector<int>& caps, int ell);

/// Number of memoized (caps, l) entries of the matching cache.
std::size_t leng_cache_size();

}  // namespace frobpush
