#include "frobpush/trunc_algebra.hpp"

#include <string>

#include "frobpush/errors.hpp"

namespace frobpush {

namespace {

std::vector<int> full_caps(int n, Prime p) {
  if (n < 1) throw PreconditionError("number of variables must be at least 1");
  return std::vector<int>(static_cast<std::size_t>(n), static_cast<int>(p.value()) - 1);
}

}  // namespace

int top_degree(int n, Prime p) { return n * (static_cast<int>(p.value()) - 1); }

RGrade::RGrade(int n, Prime p, int grade)
    : n_(n), p_(p), grade_(grade), basis_(enumerate_box(full_caps(n, p), grade)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::size_t RGrade::index_of(const MultiIndex& mono) const {
  auto it = index_.find(mono);
  if (it == index_.end()) {
    throw PreconditionError(to_string(mono) + " is not a basis monomial of degree " +
                            std::to_string(grade_));
  }
  return it->second;
}

DiffMonomial::DiffMonomial(MultiIndex orders, Prime p) : orders_(std::move(orders)) {
  for (int e : orders_.exponents()) {
    if (e > static_cast<int>(p.value()) - 1) {
      throw PreconditionError("operator exponent " + std::to_string(e) +
                              " exceeds p - 1 (t_i^p = 0)");
    }
  }
}

DiffResult apply_diff(const DiffMonomial& op, const MultiIndex& mono, Prime p) {
  const auto& e = op.orders();
  if (e.size() != mono.size()) throw DimensionError("operator and monomial differ in n");
  const std::uint32_t pv = p.value();
  std::vector<int> out(mono.size());
  std::uint32_t coeff = 1;
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] > static_cast<int>(pv) - 1) {
      throw PreconditionError(to_string(mono) + " is not a monomial of R (exponent >= p)");
    }
    if (e[i] > mono[i]) return {FpScalar(0, p), std::nullopt};
    // falling factorial k (k-1) .. (k-e+1)
    for (int j = 0; j < e[i]; ++j) coeff = modp::mul(coeff, static_cast<std::uint32_t>(mono[i] - j), pv);
    out[i] = mono[i] - e[i];
  }
  if (coeff == 0) return {FpScalar(0, p), std::nullopt};
  return {FpScalar(coeff, p), MultiIndex(std::move(out))};
}

FpMatrix operator_matrix(const DiffMonomial& op, int n, Prime p, int grade) {
  RGrade source(n, p, grade);
  RGrade target(n, p, grade - op.degree());
  FpMatrix m(target.dim(), source.dim(), p);
  for (std::size_t c = 0; c < source.dim(); ++c) {
    DiffResult r = apply_diff(op, source.basis()[c], p);
    if (!r.is_zero()) m.set_raw(target.index_of(*r.result), c, r.coeff.value());
  }
  return m;
}

FpMatrix omega_pairing_matrix(int n, Prime p, int ell) {
  const int top = top_degree(n, p);
  if (ell < 0 || ell > top) {
    throw PreconditionError("pairing degree " + std::to_string(ell) + " outside [0, " +
                            std::to_string(top) + "]");
  }
  const MultiIndex omega(full_caps(n, p));
  RGrade ops(n, p, ell);
  RGrade target(n, p, top - ell);
  FpMatrix m(target.dim(), ops.dim(), p);
  for (std::size_t c = 0; c < ops.dim(); ++c) {
    DiffResult r = apply_diff(DiffMonomial(ops.basis()[c], p), omega, p);
    if (!r.is_zero()) m.set_raw(target.index_of(*r.result), c, r.coeff.value());
  }
  return m;
}

GradedSubspace::GradedSubspace(int n, Prime p, int grade, const FpMatrix& spanning_rows)
    : n_(n), grade_(grade), basis_(0, 0, p) {
  const int top = top_degree(n, p);
  if (grade < 0 || grade > top) {
    throw PreconditionError("grade " + std::to_string(grade) + " outside [0, " +
                            std::to_string(top) + "]");
  }
  if (!(spanning_rows.modulus() == p)) throw ModulusError("subspace modulus mismatch");
  const std::size_t ambient = RGrade(n, p, grade).dim();
  if (spanning_rows.cols() != ambient) {
    throw DimensionError("subspace rows have " + std::to_string(spanning_rows.cols()) +
                         " coordinates, R^" + std::to_string(grade) + " has dimension " +
                         std::to_string(ambient));
  }
  RowReduction red = row_reduce(spanning_rows);
  basis_ = red.rref.row_block(0, red.rank);
}

GradedSubspace GradedSubspace::coordinate(int n, Prime p, int grade,
                                          std::span<const std::size_t> monomials) {
  const std::size_t ambient = RGrade(n, p, grade).dim();
  FpMatrix rows(monomials.size(), ambient, p);
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    if (monomials[i] >= ambient) throw DimensionError("coordinate index out of range");
    rows.set_raw(i, monomials[i], 1);
  }
  return GradedSubspace(n, p, grade, rows);
}

GradedSubspace random_subspace(int n, Prime p, int grade, std::size_t dim,
                               std::mt19937_64& rng) {
  const std::size_t ambient = RGrade(n, p, grade).dim();
  if (dim > ambient) throw PreconditionError("requested dimension exceeds ambient dimension");
  for (;;) {
    FpMatrix rows(dim, ambient, p);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < ambient; ++c) {
        rows.set_raw(r, c, static_cast<std::uint32_t>(rng() % p.value()));
      }
    }
    GradedSubspace v(n, p, grade, rows);
    if (v.dim() == dim) return v;
  }
}

std::size_t spanned_image_dim(const GradedSubspace& v) {
  const Prime p = v.modulus();
  const int top = top_degree(v.n(), p);
  const int ell = v.grade();
  if (2 * ell < top) {
    throw PreconditionError("grade " + std::to_string(ell) + " is below n(p-1)/2 = " +
                            std::to_string(top) + "/2");
  }
  const int op_degree = 2 * ell - top;
  RGrade ops(v.n(), p, op_degree);
  RGrade target(v.n(), p, top - ell);
  RGrade source(v.n(), p, ell);

  // Every (operator monomial, basis vector) image, then one rank computation.
  FpMatrix images(ops.dim() * v.dim(), target.dim(), p);
  const std::uint32_t pv = p.value();
  std::size_t row = 0;
  for (const MultiIndex& e : ops.basis()) {
    const DiffMonomial op(e, p);
    for (std::size_t b = 0; b < v.dim(); ++b, ++row) {
      auto out = images.row(row);
      auto in = v.basis().row(b);
      for (std::size_t c = 0; c < source.dim(); ++c) {
        if (in[c] == 0) continue;
        DiffResult r = apply_diff(op, source.basis()[c], p);
        if (r.is_zero()) continue;
        const std::size_t t = target.index_of(*r.result);
        out[t] = modp::add(out[t], modp::mul(in[c], r.coeff.value(), pv), pv);
      }
    }
  }
  return rank(images);
}

Prop36Verdict check_prop36(const GradedSubspace& v) {
  const std::size_t image = spanned_image_dim(v);
  Prop36Verdict verdict{v.dim() <= image, v.dim(), image, std::nullopt};
  if (!verdict.holds) verdict.witness = v.basis();
  return verdict;
}

}  // namespace frobpush
