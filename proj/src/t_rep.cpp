#include "frobpush/t_rep.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "frobpush/errors.hpp"

namespace frobpush {

std::size_t word_count(int n, int ell) {
  if (n < 1) throw PreconditionError("number of variables must be at least 1");
  if (ell < 0) return 0;
  std::size_t count = 1;
  for (int i = 0; i < ell; ++i) {
    if (count > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(n)) {
      throw DimensionError("tensor power too large");
    }
    count *= static_cast<std::size_t>(n);
  }
  return count;
}

std::vector<int> word_letters(std::size_t index, int n, int ell) {
  std::vector<int> letters(static_cast<std::size_t>(ell));
  for (int j = ell; j-- > 0;) {
    letters[static_cast<std::size_t>(j)] = static_cast<int>(index % static_cast<std::size_t>(n));
    index /= static_cast<std::size_t>(n);
  }
  return letters;
}

std::vector<MultiIndex> t_basis(int n, Prime p, int ell) {
  if (n < 1) throw PreconditionError("number of variables must be at least 1");
  return enumerate_box(std::vector<int>(static_cast<std::size_t>(n), static_cast<int>(p.value()) - 1),
                       ell);
}

std::vector<MultiIndex> sym_basis(int n, int degree) {
  if (n < 1) throw PreconditionError("number of variables must be at least 1");
  if (degree < 0) return {};
  return enumerate_box(std::vector<int>(static_cast<std::size_t>(n), degree), degree);
}

namespace {

// Visits the index of every word whose letter content is `remaining`.
template <typename Visit>
void for_each_word(std::vector<int>& remaining, int n, int left, std::size_t prefix,
                   Visit&& visit) {
  if (left == 0) {
    visit(prefix);
    return;
  }
  for (int letter = 0; letter < n; ++letter) {
    if (remaining[static_cast<std::size_t>(letter)] == 0) continue;
    --remaining[static_cast<std::size_t>(letter)];
    for_each_word(remaining, n, left - 1, prefix * static_cast<std::size_t>(n) + letter, visit);
    ++remaining[static_cast<std::size_t>(letter)];
  }
}

std::uint32_t factorial_product(const MultiIndex& k, std::uint32_t p) {
  std::uint32_t c = 1 % p;
  for (int e : k.exponents()) {
    for (int j = 2; j <= e; ++j) c = modp::mul(c, static_cast<std::uint32_t>(j) % p, p);
  }
  return c;
}

void fill_v_row(const MultiIndex& k, int n, std::span<std::uint32_t> row, std::uint32_t p) {
  const std::uint32_t c = factorial_product(k, p);
  if (c == 0) return;
  std::vector<int> remaining = k.exponents();
  for_each_word(remaining, n, k.degree(), 0, [&](std::size_t idx) { row[idx] = c; });
}

void check_content(const MultiIndex& k, int n, int ell) {
  if (static_cast<int>(k.size()) != n) throw DimensionError("content vector length differs from n");
  if (k.degree() != ell) {
    throw PreconditionError("content " + to_string(k) + " does not have degree " +
                            std::to_string(ell));
  }
}

FpMatrix v_matrix(const std::vector<MultiIndex>& rows, int n, Prime p, int ell) {
  FpMatrix m(rows.size(), word_count(n, ell), p);
  for (std::size_t r = 0; r < rows.size(); ++r) fill_v_row(rows[r], n, m.row(r), p.value());
  return m;
}

}  // namespace

std::vector<std::uint32_t> v_vector(const MultiIndex& k, int n, int ell, Prime p) {
  check_content(k, n, ell);
  std::vector<std::uint32_t> row(word_count(n, ell), 0);
  fill_v_row(k, n, row, p.value());
  return row;
}

FpMatrix sym_to_t_matrix(int n, Prime p, int ell) {
  return v_matrix(sym_basis(n, ell), n, p, ell);
}

FpMatrix capped_v_matrix(int n, Prime p, int ell) {
  return v_matrix(t_basis(n, p, ell), n, p, ell);
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step
    if (r > std::numeric_limits<std::int64_t>::max() / (n - k + i)) {
      throw DimensionError("binomial coefficient overflows 64 bits");
    }
    r = r * (n - k + i) / i;
  }
  return r;
}

std::int64_t t_rank(int n, Prime p, int ell) {
  if (n < 1) throw PreconditionError("number of variables must be at least 1");
  if (ell < 0) return 0;
  const int pv = static_cast<int>(p.value());
  const int steps = ell / pv;
  std::int64_t total = 0;
  for (int q = 0; q <= steps; ++q) {
    const std::int64_t term = binomial(n, q) * binomial(n + ell - q * pv - 1, n - 1);
    total += (q % 2 ? -term : term);
  }
  return total;
}

std::int64_t gl2_dim(Prime p, int ell) {
  const int pv = static_cast<int>(p.value());
  if (ell < 0 || ell > 2 * (pv - 1)) {
    throw PreconditionError("GL(2) degree " + std::to_string(ell) + " outside [0, " +
                            std::to_string(2 * (pv - 1)) + "]");
  }
  return ell < pv ? ell + 1 : 2 * pv - 1 - ell;
}

std::vector<ExteriorIndex> exterior_basis(int n, int q) {
  std::vector<ExteriorIndex> out;
  if (q < 0 || q > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back({idx});
    int i = q - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - q + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < q; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

const FpMatrix& KoszulComplex::phi(int q) const {
  if (q < 1 || q > length) throw PreconditionError("no differential phi_" + std::to_string(q));
  return differentials[static_cast<std::size_t>(length - q)];
}

KoszulComplex koszul_complex(int n, Prime p, int ell) {
  if (n < 1) throw PreconditionError("number of variables must be at least 1");
  if (ell < 0) throw PreconditionError("degree must be non-negative");
  const int pv = static_cast<int>(p.value());
  KoszulComplex cx{n, p, ell, ell / pv, {}, {}};
  for (int q = 0; q <= cx.length; ++q) {
    cx.terms.push_back({q, ell - q * pv, sym_basis(n, ell - q * pv), exterior_basis(n, q)});
  }

  for (int q = cx.length; q >= 1; --q) {
    const KoszulTerm& src = cx.terms[static_cast<std::size_t>(q)];
    const KoszulTerm& dst = cx.terms[static_cast<std::size_t>(q - 1)];
    std::map<MultiIndex, std::size_t> sym_pos;
    for (std::size_t i = 0; i < dst.sym.size(); ++i) sym_pos.emplace(dst.sym[i], i);
    std::map<ExteriorIndex, std::size_t> wedge_pos;
    for (std::size_t i = 0; i < dst.wedge.size(); ++i) wedge_pos.emplace(dst.wedge[i], i);

    FpMatrix m(dst.dim(), src.dim(), p);
    for (std::size_t s = 0; s < src.sym.size(); ++s) {
      for (std::size_t w = 0; w < src.wedge.size(); ++w) {
        const std::size_t col = s * src.wedge.size() + w;
        const auto& ks = src.wedge[w].indices;
        for (std::size_t i = 0; i < ks.size(); ++i) {
          std::vector<int> f = src.sym[s].exponents();
          f[static_cast<std::size_t>(ks[i])] += pv;
          ExteriorIndex rest{ks};
          rest.indices.erase(rest.indices.begin() + static_cast<std::ptrdiff_t>(i));
          const std::size_t row =
              sym_pos.at(MultiIndex(std::move(f))) * dst.wedge.size() + wedge_pos.at(rest);
          m.set(row, col, i % 2 ? -1 : 1);
        }
      }
    }
    cx.differentials.push_back(std::move(m));
  }
  return cx;
}

KoszulVerdict verify_koszul_exact(int n, Prime p, int ell) {
  const KoszulComplex cx = koszul_complex(n, p, ell);
  const int len = cx.length;
  KoszulVerdict v;
  v.expected_rank = t_rank(n, p, ell);
  for (const auto& t : cx.terms) v.dims.push_back(t.dim());
  v.ranks.assign(static_cast<std::size_t>(len) + 1, 0);
  for (int q = 1; q <= len; ++q) v.ranks[static_cast<std::size_t>(q)] = rank(cx.phi(q));

  auto fail = [&](int position, std::string detail) {
    if (v.exact) {
      v.exact = false;
      v.failing_position = position;
      v.detail = std::move(detail);
    }
  };

  for (int q = 1; q < len; ++q) {
    if (!(cx.phi(q) * cx.phi(q + 1)).is_zero()) {
      fail(q, "phi_" + std::to_string(q) + " o phi_" + std::to_string(q + 1) + " != 0");
    }
  }
  for (int q = 1; q < len; ++q) {
    const auto uq = static_cast<std::size_t>(q);
    if (v.ranks[uq] + v.ranks[uq + 1] != v.dims[uq]) {
      fail(q, "at K_" + std::to_string(q) + ": rank phi_" + std::to_string(q) + " + rank phi_" +
                  std::to_string(q + 1) + " = " + std::to_string(v.ranks[uq] + v.ranks[uq + 1]) +
                  " != dim " + std::to_string(v.dims[uq]));
    }
  }
  if (len >= 1) {
    const auto ul = static_cast<std::size_t>(len);
    if (v.ranks[ul] != v.dims[ul]) {
      fail(len, "leftmost map phi_" + std::to_string(len) + " has rank " +
                    std::to_string(v.ranks[ul]) + " < dim " + std::to_string(v.dims[ul]));
    }
  }
  v.cokernel_dim = v.dims[0] - (len >= 1 ? v.ranks[1] : 0);
  if (static_cast<std::int64_t>(v.cokernel_dim) != v.expected_rank) {
    fail(0, "cokernel of phi_1 has dimension " + std::to_string(v.cokernel_dim) +
                ", rank T^l is " + std::to_string(v.expected_rank));
  }
  return v;
}

WeightVerdict degree_weight_check(int n, Prime p, int ell) {
  const auto basis = t_basis(n, p, ell);
  WeightVerdict v{true, std::vector<std::int64_t>(static_cast<std::size_t>(n), 0),
                  static_cast<std::int64_t>(basis.size()), 0};
  v.scaled_expected = static_cast<std::int64_t>(ell) * v.rank;
  for (const auto& m : basis) {
    for (std::size_t i = 0; i < m.size(); ++i) v.exponent_sums[i] += m[i];
  }
  for (std::int64_t s : v.exponent_sums) {
    if (n * s != v.scaled_expected) v.ok = false;
  }
  return v;
}

}  // namespace frobpush
