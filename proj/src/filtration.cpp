#include "frobpush/filtration.hpp"

#include <algorithm>
#include <map>
#include <span>
#include <string>

#include "frobpush/errors.hpp"
#include "frobpush/t_rep.hpp"
#include "frobpush/trunc_algebra.hpp"

namespace frobpush {

std::vector<MultiIndex> alpha_basis(int n, Prime p, int ell) {
  std::vector<MultiIndex> out;
  const int top = top_degree(n, p);
  for (int d = std::max(ell, 0); d <= top; ++d) {
    auto layer = t_basis(n, p, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<NablaTerm> nabla(const MultiIndex& alpha, Prime p) {
  const int pv = static_cast<int>(p.value());
  std::vector<NablaTerm> terms;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] >= pv) {
      throw PreconditionError(to_string(alpha) + " is not an alpha-monomial (alpha_i^p = 0)");
    }
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    std::vector<int> lowered = alpha.exponents();
    --lowered[i];
    terms.push_back({FpScalar(-alpha[i], p), MultiIndex(std::move(lowered)), static_cast<int>(i)});
  }
  return terms;
}

FpMatrix graded_nabla_matrix(int n, Prime p, int ell) {
  const int top = top_degree(n, p);
  if (ell < 1 || ell > top) {
    throw PreconditionError("graded nabla needs 1 <= l <= " + std::to_string(top));
  }
  const auto source = t_basis(n, p, ell);
  const auto lower = t_basis(n, p, ell - 1);
  std::map<MultiIndex, std::size_t> lower_pos;
  for (std::size_t i = 0; i < lower.size(); ++i) lower_pos.emplace(lower[i], i);

  FpMatrix m(static_cast<std::size_t>(n) * lower.size(), source.size(), p);
  for (std::size_t c = 0; c < source.size(); ++c) {
    for (const NablaTerm& t : nabla(source[c], p)) {
      const std::size_t row = static_cast<std::size_t>(t.direction) * lower.size() + lower_pos.at(t.mono);
      m.set_raw(row, c, t.coeff.value());
    }
  }
  return m;
}

namespace {

// Expands nabla^{|k|}(alpha^k) into tensor words, leftmost factor first.
void expand_nabla(std::vector<int>& k, int left, int n, std::size_t prefix,
                  std::uint32_t coeff, std::uint32_t p, std::span<std::uint32_t> row) {
  if (left == 0) {
    row[prefix] = modp::add(row[prefix], coeff, p);
    return;
  }
  for (int i = 0; i < n; ++i) {
    const int ki = k[static_cast<std::size_t>(i)];
    if (ki == 0) continue;
    const std::uint32_t c = modp::mul(coeff, modp::reduce(-ki, p), p);
    --k[static_cast<std::size_t>(i)];
    expand_nabla(k, left - 1, n, prefix * static_cast<std::size_t>(n) + static_cast<std::size_t>(i), c,
                 p, row);
    ++k[static_cast<std::size_t>(i)];
  }
}

}  // namespace

FpMatrix nabla_power(int n, Prime p, int ell) {
  const int top = top_degree(n, p);
  if (ell < 0 || ell > top) {
    throw PreconditionError("nabla power needs 0 <= l <= " + std::to_string(top));
  }
  const auto source = t_basis(n, p, ell);
  FpMatrix m(source.size(), word_count(n, ell), p);
  for (std::size_t r = 0; r < source.size(); ++r) {
    std::vector<int> k = source[r].exponents();
    expand_nabla(k, ell, n, 0, 1 % p.value(), p.value(), m.row(r));
  }
  return m;
}

std::vector<std::uint32_t> nabla_power_row(const MultiIndex& k, Prime p) {
  if (k.size() == 0) throw DimensionError("empty alpha exponent");
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] >= static_cast<int>(p.value())) {
      throw PreconditionError(to_string(k) + " is not an alpha-monomial (alpha_i^p = 0)");
    }
  }
  const int n = static_cast<int>(k.size());
  std::vector<std::uint32_t> row(word_count(n, k.degree()), 0);
  std::vector<int> work = k.exponents();
  expand_nabla(work, k.degree(), n, 0, 1 % p.value(), p.value(), row);
  return row;
}

CurveReport curve_report(Prime p) {
  const int pv = static_cast<int>(p.value());
  CurveReport report{p, true, {}, {}, 0};
  for (int ell = 1; ell <= pv - 1; ++ell) {
    const FpMatrix g = graded_nabla_matrix(1, p, ell);
    const bool iso = g.rows() == 1 && g.cols() == 1 && g(0, 0) != 0;
    report.graded_entries.push_back(g.rows() == 1 && g.cols() == 1 ? g(0, 0) : 0);
    report.ok = report.ok && iso;
  }
  for (int ell = 0; ell <= pv; ++ell) report.ideal_dims.push_back(alpha_basis(1, p, ell).size());
  report.length = 0;
  while (report.ideal_dims[static_cast<std::size_t>(report.length)] != 0) ++report.length;
  report.ok = report.ok && report.length == pv;
  return report;
}

}  // namespace frobpush
