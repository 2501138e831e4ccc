#include "frobpush/fp_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "frobpush/errors.hpp"

namespace frobpush {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint32_t value) : value_(value) {
  if (value >= (1u << 31)) {
    throw ModulusError("modulus " + std::to_string(value) + " exceeds 2^31");
  }
  if (!is_prime(value)) {
    throw ModulusError("modulus " + std::to_string(value) + " is not prime");
  }
}

namespace modp {

std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t result = 1 % p;
  std::uint64_t base = a % p;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("zero has no inverse mod p");
  return pow(a, p - 2, p);
}

}  // namespace modp

FpScalar::FpScalar(std::int64_t value, Prime modulus)
    : value_(modp::reduce(value, modulus.value())), modulus_(modulus) {}

FpScalar FpScalar::inverse() const {
  return {modp::inv(value_, modulus_.value()), modulus_};
}

FpScalar FpScalar::operator-() const {
  return {-static_cast<std::int64_t>(value_), modulus_};
}

namespace {

Prime common_modulus(Prime a, Prime b) {
  if (!(a == b)) {
    throw ModulusError("operands over F_" + std::to_string(a.value()) +
                       " and F_" + std::to_string(b.value()));
  }
  return a;
}

}  // namespace

FpScalar operator+(const FpScalar& a, const FpScalar& b) {
  Prime p = common_modulus(a.modulus_, b.modulus_);
  return {modp::add(a.value_, b.value_, p.value()), p};
}

FpScalar operator-(const FpScalar& a, const FpScalar& b) {
  Prime p = common_modulus(a.modulus_, b.modulus_);
  return {modp::sub(a.value_, b.value_, p.value()), p};
}

FpScalar operator*(const FpScalar& a, const FpScalar& b) {
  Prime p = common_modulus(a.modulus_, b.modulus_);
  return {modp::mul(a.value_, b.value_, p.value()), p};
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, Prime modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, Prime modulus) {
  FpMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % modulus.value();
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                             Prime modulus) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FpMatrix m(rows.size(), cols, modulus);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("row " + std::to_string(r) + " has length " +
                           std::to_string(rows[r].size()) + ", expected " +
                           std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

FpScalar FpMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
  return {data_[r * cols_ + c], modulus_};
}

void FpMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
  data_[r * cols_ + c] = modp::reduce(value, modulus_.value());
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(cols_, rows_, modulus_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  }
  return t;
}

FpMatrix FpMatrix::scaled(std::int64_t factor) const {
  const std::uint32_t p = modulus_.value();
  const std::uint32_t f = modp::reduce(factor, p);
  FpMatrix out = *this;
  for (auto& x : out.data_) x = modp::mul(x, f, p);
  return out;
}

FpMatrix FpMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw DimensionError("row block out of range");
  FpMatrix out(count, cols_, modulus_);
  std::copy(data_.begin() + first * cols_, data_.begin() + (first + count) * cols_,
            out.data_.begin());
  return out;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t x) { return x == 0; });
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  Prime pm = common_modulus(a.modulus_, b.modulus_);
  if (a.cols_ != b.rows_) {
    throw DimensionError("cannot multiply " + std::to_string(a.rows_) + "x" +
                         std::to_string(a.cols_) + " by " + std::to_string(b.rows_) +
                         "x" + std::to_string(b.cols_));
  }
  const std::uint64_t p = pm.value();
  FpMatrix out(a.rows_, b.cols_, pm);
  std::vector<std::uint64_t> acc(b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::uint64_t x = a.data_[i * a.cols_ + k];
      if (x == 0) continue;
      const std::uint32_t* brow = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * brow[j]) % p;
    }
    for (std::size_t j = 0; j < b.cols_; ++j) {
      out.data_[i * b.cols_ + j] = static_cast<std::uint32_t>(acc[j]);
    }
  }
  return out;
}

bool operator==(const FpMatrix& a, const FpMatrix& b) {
  return a.modulus_ == b.modulus_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.data_ == b.data_;
}

FpMatrix stack(const FpMatrix& top, const FpMatrix& bottom) {
  common_modulus(top.modulus(), bottom.modulus());
  if (top.cols() != bottom.cols()) throw DimensionError("stack: column counts differ");
  FpMatrix out(top.rows() + bottom.rows(), top.cols(), top.modulus());
  for (std::size_t r = 0; r < top.rows(); ++r) {
    std::copy(top.row(r).begin(), top.row(r).end(), out.row(r).begin());
  }
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    std::copy(bottom.row(r).begin(), bottom.row(r).end(), out.row(top.rows() + r).begin());
  }
  return out;
}

namespace {

// target -= factor * source, over columns [from, end).
void subtract_scaled(std::span<std::uint32_t> target, std::span<const std::uint32_t> source,
                     std::uint32_t factor, std::size_t from, std::uint32_t p) {
  for (std::size_t c = from; c < target.size(); ++c) {
    if (source[c] != 0) target[c] = modp::sub(target[c], modp::mul(factor, source[c], p), p);
  }
}

void swap_rows(FpMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(m.row(a).begin(), m.row(a).end(), m.row(b).begin());
}

}  // namespace

RowReduction row_reduce(const FpMatrix& input) {
  FpMatrix m = input;
  const std::uint32_t p = m.modulus().value();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    swap_rows(m, pivot, rank);

    auto prow = m.row(rank);
    const std::uint32_t scale = modp::inv(prow[c], p);
    for (std::size_t j = c; j < m.cols(); ++j) prow[j] = modp::mul(prow[j], scale, p);

    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0) continue;
      subtract_scaled(m.row(r), prow, m(r, c), c, p);
    }
    pivots.push_back(c);
    ++rank;
  }
  return {std::move(m), rank, std::move(pivots)};
}

std::size_t rank(const FpMatrix& input) {
  FpMatrix m = input;
  const std::uint32_t p = m.modulus().value();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    swap_rows(m, pivot, rank);
    auto prow = m.row(rank);
    const std::uint32_t scale = modp::inv(prow[c], p);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      subtract_scaled(m.row(r), prow, modp::mul(m(r, c), scale, p), c, p);
    }
    ++rank;
  }
  return rank;
}

std::size_t span_dim(const std::vector<std::vector<std::uint32_t>>& vectors, Prime modulus) {
  if (vectors.empty()) return 0;
  const std::size_t cols = vectors.front().size();
  FpMatrix m(vectors.size(), cols, modulus);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != cols) {
      throw DimensionError("span_dim: vector " + std::to_string(r) + " has length " +
                           std::to_string(vectors[r].size()) + ", expected " +
                           std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, vectors[r][c]);
  }
  return rank(m);
}

std::string to_string(const FpMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << ']';
  }
  os << "] mod " << m.modulus().value();
  return os.str();
}

}  // namespace frobpush
