#pragma once

// Truncated symmetric powers T^l(V) of the standard n-dimensional
// representation, realized inside V^{(x) l}.
//
// Tensor coordinates are indexed by words of length l over the letters
// 0..n-1 (printed 1..n), ordered lexicographically; the word w_0 .. w_{l-1}
// sits at index sum_j w_j n^{l-1-j}.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "frobpush/fp_linalg.hpp"
#include "frobpush/monomial_box.hpp"

namespace frobpush {

/// n^l, the dimension of V^{(x) l}. Throws DimensionError on overflow.
std::size_t word_count(int n, int ell);

/// Letters of the word at `index` (0-based letters).
std::vector<int> word_letters(std::size_t index, int n, int ell);

/// Monomials of degree l with exponents <= p - 1.
std::vector<MultiIndex> t_basis(int n, Prime p, int ell);

/// All monomials of Sym^degree in n variables (empty for negative degree).
std::vector<MultiIndex> sym_basis(int n, int degree);

/// Coordinates of v(k) = sum over S_l of e_1^{k_1} (x) .. (x) e_n^{k_n}
/// permuted: each word with letter content k receives k_1! .. k_n! mod p.
std::vector<std::uint32_t> v_vector(const MultiIndex& k, int n, int ell, Prime p);

/// Sym^l -> V^{(x) l}, e^k |-> v(k). Row convention: one row per Sym^l
/// monomial (lexicographic), one column per word.
FpMatrix sym_to_t_matrix(int n, Prime p, int ell);

/// The rows of sym_to_t_matrix restricted to t_basis(n, p, l).
FpMatrix capped_v_matrix(int n, Prime p, int ell);

/// Exact binomial coefficient; zero outside 0 <= k <= n.
std::int64_t binomial(std::int64_t n, std::int64_t k);

/// rank T^l = sum_{q=0}^{floor(l/p)} (-1)^q C(n,q) C(n+l-qp-1, n-1).
std::int64_t t_rank(int n, Prime p, int ell);

/// Dimension of T^l for n = 2: l+1 below p, 2p-1-l from p to 2(p-1).
std::int64_t gl2_dim(Prime p, int ell);

/// Strictly increasing 0-based indices k_1 < .. < k_q of a wedge e_{k_1}^..^e_{k_q}.
struct ExteriorIndex {
  std::vector<int> indices;

  friend auto operator<=>(const ExteriorIndex&, const ExteriorIndex&) = default;
};

/// All q-subsets of {0..n-1}, lexicographic.
std::vector<ExteriorIndex> exterior_basis(int n, int q);

/// K_q = Sym^{l - qp} (x) Lambda^q, basis ordered Sym-monomial major.
struct KoszulTerm {
  int q;
  int sym_degree;
  std::vector<MultiIndex> sym;
  std::vector<ExteriorIndex> wedge;

  std::size_t dim() const { return sym.size() * wedge.size(); }
};

/// 0 -> K_L -> .. -> K_1 -> K_0 = Sym^l, with L = floor(l/p) and
/// phi(f (x) e_{k_1}^..^e_{k_q}) = sum_i (-1)^{i-1} e_{k_i}^p f (x) (omit k_i).
/// Differentials use the column convention (rows: K_{q-1}, columns: K_q).
struct KoszulComplex {
  int n;
  Prime p;
  int ell;
  int length;                         // L = floor(l / p)
  std::vector<KoszulTerm> terms;      // terms[q], q = 0..L
  std::vector<FpMatrix> differentials;  // phi_L, phi_{L-1}, .., phi_1

  /// phi_q : K_q -> K_{q-1}, 1 <= q <= L.
  const FpMatrix& phi(int q) const;
};

KoszulComplex koszul_complex(int n, Prime p, int ell);

struct KoszulVerdict {
  bool exact = true;
  int failing_position = -1;            // q of the offending term, -1 if exact
  std::string detail;
  std::vector<std::size_t> dims;        // dims[q] = dim K_q
  std::vector<std::size_t> ranks;       // ranks[q] = rank phi_q (ranks[0] = 0)
  std::size_t cokernel_dim = 0;         // dim Sym^l - rank phi_1
  std::int64_t expected_rank = 0;       // t_rank(n, p, l)
};

/// phi_q o phi_{q+1} = 0; rank phi_q + rank phi_{q+1} = dim K_q for
/// 1 <= q < L; phi_L injective; coker phi_1 has dimension t_rank.
KoszulVerdict verify_koszul_exact(int n, Prime p, int ell);

struct WeightVerdict {
  bool ok;
  std::vector<std::int64_t> exponent_sums;  // per variable, over t_basis
  std::int64_t rank;
  /// l * rank; each variable must satisfy n * exponent_sum == this.
  std::int64_t scaled_expected;
};

/// Each variable carries exactly l/n of the total exponent weight of t_basis.
WeightVerdict degree_weight_check(int n, Prime p, int ell);

}  // namespace frobpush
