#pragma once

// Local model of the canonical filtration of F^*(F_* O) for a rank-one W.
//
// Locally I_0 = A (x)_{A^p} A is free over A on the monomials
// alpha^k = alpha_1^{k_1} .. alpha_n^{k_n}, 0 <= k_i <= p - 1, where
// alpha_i = x_i (x) 1 - 1 (x) x_i. I_l is spanned by the alpha^k of degree
// >= l, and the connection acts by
//
//   nabla(alpha^k) = - sum_i k_i alpha^{k - e_i} (x) dx_i.
//
// Direction slots dx_1..dx_n are 0-based in code. Iterated nabla attaches
// each new dx factor on the left of the tensor word.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "frobpush/fp_linalg.hpp"
#include "frobpush/monomial_box.hpp"

namespace frobpush {

struct NablaTerm {
  FpScalar coeff;    // nonzero
  MultiIndex mono;   // alpha exponent after the derivative
  int direction;     // 0-based index of dx_i
};

/// All alpha^k with degree in [max(l, 0), n(p-1)], ordered by degree and then
/// lexicographically. Empty for l > n(p-1).
std::vector<MultiIndex> alpha_basis(int n, Prime p, int ell);

/// nabla(alpha^k), one term per variable with k_i > 0.
std::vector<NablaTerm> nabla(const MultiIndex& alpha, Prime p);

/// Induced map I_l/I_{l+1} -> (I_{l-1}/I_l) (x) Omega^1 in the column
/// convention: columns are degree-l alpha-monomials, rows are pairs
/// (direction i, degree-(l-1) monomial) ordered direction-major.
/// Requires 1 <= l <= n(p-1).
FpMatrix graded_nabla_matrix(int n, Prime p, int ell);

/// nabla^l : I_l/I_{l+1} -> (Omega^1)^{(x) l} in the row convention: one row
/// per degree-l alpha-monomial, one column per tensor word. Computed by
/// iterating the nabla formula, independently of the v(k) vectors.
FpMatrix nabla_power(int n, Prime p, int ell);

/// The row of nabla_power for alpha^k alone, as a dense vector over the
/// n^{|k|} tensor words.
std::vector<std::uint32_t> nabla_power_row(const MultiIndex& k, Prime p);

struct CurveReport {
  Prime p;
  bool ok;
  std::vector<std::uint32_t> graded_entries;  // entry l-1 is the 1x1 map at grade l
  std::vector<std::size_t> ideal_dims;        // |alpha_basis(1, p, l)|, l = 0..p
  int length;                                 // smallest l with I_l = 0
};

/// For n = 1: every graded nabla map (1 <= l <= p-1) is an invertible 1x1
/// matrix and the filtration has length exactly p.
CurveReport curve_report(Prime p);

}  // namespace frobpush
