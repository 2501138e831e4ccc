#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library routines they are compared against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using Row = std::vector<std::uint32_t>;

/// Rank by counting the row span: |span| = p^rank. Exponential in the
/// number of rows; keep it below about 8 rows for small p.
inline std::size_t span_rank(const std::vector<Row>& rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::set<Row> span;
  std::vector<std::uint32_t> coeff(rows.size(), 0);
  while (true) {
    Row v(cols, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < cols; ++c) v[c] = (v[c] + coeff[r] * rows[r][c]) % p;
    }
    span.insert(std::move(v));
    std::size_t i = 0;
    while (i < coeff.size() && ++coeff[i] == p) coeff[i++] = 0;
    if (i == coeff.size()) break;
  }
  std::size_t rank = 0;
  for (std::size_t size = span.size(); size > 1; size /= p) ++rank;
  return rank;
}

/// Every vector of the product of [0, caps_i], filtered by coordinate sum,
/// in lexicographic order.
inline std::vector<std::vector<int>> box(const std::vector<int>& caps, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(caps.size(), 0);
  while (true) {
    if (std::accumulate(v.begin(), v.end(), 0) == degree) out.push_back(v);
    std::size_t i = caps.size();
    while (i > 0) {
      --i;
      if (v[i] < caps[i]) {
        ++v[i];
        std::fill(v.begin() + static_cast<std::ptrdiff_t>(i) + 1, v.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (caps.empty()) return out;
  }
}

inline bool dominated(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// Exhaustive search for an injective dominance-respecting assignment.
inline bool matching_exists_exhaustive(const std::vector<int>& caps, int ell) {
  const int sigma = std::accumulate(caps.begin(), caps.end(), 0);
  const auto src = box(caps, ell);
  const auto dst = box(caps, sigma - ell);
  std::vector<bool> used(dst.size(), false);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == src.size()) return true;
    for (std::size_t j = 0; j < dst.size(); ++j) {
      if (used[j] || !dominated(src[i], dst[j])) continue;
      used[j] = true;
      if (place(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return place(0);
}

/// sum over S_l of the permuted word e_1^{k_1} .. e_n^{k_n}, by running
/// through all l! orderings of l labelled slots.
inline Row v_by_permutations(const std::vector<int>& k, std::uint32_t p) {
  std::vector<int> base;
  for (std::size_t i = 0; i < k.size(); ++i) base.insert(base.end(), static_cast<std::size_t>(k[i]), static_cast<int>(i));
  const std::size_t n = k.size();
  std::size_t words = 1;
  for (std::size_t j = 0; j < base.size(); ++j) words *= n;
  Row out(words, 0);
  std::vector<std::size_t> perm(base.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < perm.size(); ++j) idx = idx * n + static_cast<std::size_t>(base[perm[j]]);
    out[idx] = (out[idx] + 1) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Applies d/dy_i one order at a time, reducing the coefficient mod p after
/// every step. Empty result means zero.
inline std::optional<std::pair<std::uint32_t, std::vector<int>>> derive_stepwise(
    const std::vector<int>& orders, std::vector<int> mono, std::uint32_t p) {
  std::uint64_t coeff = 1 % p;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (int step = 0; step < orders[i]; ++step) {
      if (mono[i] == 0) return std::nullopt;
      coeff = coeff * static_cast<std::uint64_t>(mono[i]) % p;
      --mono[i];
    }
  }
  if (coeff == 0) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(coeff), mono);
}

/// The rank formula with the binomial C(n + l - q - 1, l - qp) in place of
/// C(n + l - qp - 1, n - 1).
inline std::int64_t printed_rank_formula(int n, int p, int ell) {
  auto choose = [](std::int64_t a, std::int64_t b) -> std::int64_t {
    if (b < 0 || a < 0 || b > a) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  std::int64_t total = 0;
  for (int q = 0; q * p <= ell; ++q) {
    const std::int64_t term = choose(n, q) * choose(n + ell - q - 1, ell - q * p);
    total += q % 2 == 0 ? term : -term;
  }
  return total;
}

/// Coefficient of t^ell in (1 + t + .. + t^{p-1})^n by polynomial powering.
inline std::int64_t truncated_count(int n, int p, int ell) {
  std::vector<std::int64_t> poly{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(p) - 1, 0);
    for (std::size_t a = 0; a < poly.size(); ++a) {
      for (int b = 0; b < p; ++b) next[a + static_cast<std::size_t>(b)] += poly[a];
    }
    poly = std::move(next);
  }
  return ell >= 0 && static_cast<std::size_t>(ell) < poly.size() ? poly[static_cast<std::size_t>(ell)] : 0;
}

}  // namespace oracle
