#pragma once

// The graded algebra R = F_p[y_1..y_n] / (y_1^p, .., y_n^p) and the algebra
// D = F_p[t_1..t_n] / (t_i^p) acting on it by t_i = d/dy_i.
//
// Matrices of linear maps between graded pieces use the column convention:
// rows index the target monomial basis, columns the source basis, both in
// lexicographic order. Subspaces store their basis as rows.

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "frobpush/fp_linalg.hpp"
#include "frobpush/monomial_box.hpp"

namespace frobpush {

/// n(p - 1), the top degree of R.
int top_degree(int n, Prime p);

/// Monomial basis of the graded piece R^l (equivalently D_l).
class RGrade {
 public:
  RGrade(int n, Prime p, int grade);

  int n() const noexcept { return n_; }
  Prime modulus() const noexcept { return p_; }
  int grade() const noexcept { return grade_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<MultiIndex>& basis() const noexcept { return basis_; }
  /// Position of a basis monomial; throws PreconditionError if absent.
  std::size_t index_of(const MultiIndex& mono) const;

 private:
  int n_;
  Prime p_;
  int grade_;
  std::vector<MultiIndex> basis_;
  std::map<MultiIndex, std::size_t> index_;
};

/// t_1^{e_1} .. t_n^{e_n} with 0 <= e_i <= p - 1.
class DiffMonomial {
 public:
  DiffMonomial(MultiIndex orders, Prime p);

  const MultiIndex& orders() const noexcept { return orders_; }
  int degree() const noexcept { return orders_.degree(); }

 private:
  MultiIndex orders_;
};

struct DiffResult {
  FpScalar coeff;
  std::optional<MultiIndex> result;  // empty when the image is zero

  bool is_zero() const { return !result.has_value(); }
};

/// t^e applied to y^k: prod_i k_i! / (k_i - e_i)! * y^{k - e}, or zero when
/// some e_i > k_i or the coefficient vanishes mod p.
DiffResult apply_diff(const DiffMonomial& op, const MultiIndex& mono, Prime p);

/// Matrix of t^e : R^grade -> R^{grade - deg e}.
FpMatrix operator_matrix(const DiffMonomial& op, int n, Prime p, int grade);

/// Matrix of d |-> d . omega from D_l to R^{n(p-1) - l}, where
/// omega = (y_1 .. y_n)^{p-1}.
FpMatrix omega_pairing_matrix(int n, Prime p, int ell);

/// A subspace V of R^grade, held as a reduced row basis in the monomial
/// coordinates of R^grade.
class GradedSubspace {
 public:
  /// Spanning rows are row-reduced; dependent rows are dropped.
  GradedSubspace(int n, Prime p, int grade, const FpMatrix& spanning_rows);

  /// Span of the chosen basis monomials (indices into RGrade::basis()).
  static GradedSubspace coordinate(int n, Prime p, int grade,
                                   std::span<const std::size_t> monomials);

  int n() const noexcept { return n_; }
  Prime modulus() const noexcept { return basis_.modulus(); }
  int grade() const noexcept { return grade_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  const FpMatrix& basis() const noexcept { return basis_; }

 private:
  int n_;
  int grade_;
  FpMatrix basis_;
};

/// Uniformly random subspace of R^grade with the requested dimension.
/// Entries are rng() % p; rank-deficient draws are discarded and redrawn.
GradedSubspace random_subspace(int n, Prime p, int grade, std::size_t dim,
                               std::mt19937_64& rng);

/// dim of the span of D_{2l - n(p-1)} . V inside R^{n(p-1) - l}.
/// Requires n(p-1)/2 <= l <= n(p-1).
std::size_t spanned_image_dim(const GradedSubspace& v);

struct Prop36Verdict {
  bool holds;
  std::size_t subspace_dim;
  std::size_t image_dim;
  std::optional<FpMatrix> witness;  // basis of V when the inequality fails
};

/// dim V <= dim span(D_{2l - n(p-1)} . V).
Prop36Verdict check_prop36(const GradedSubspace& v);

}  // namespace frobpush
