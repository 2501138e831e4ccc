#pragma once

// Dense exact linear algebra over a prime field F_p.
//
// Every matrix carries its own modulus, so computations over several primes
// can coexist; combining operands over different primes throws ModulusError.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace frobpush {

bool is_prime(std::uint64_t n);

/// A validated prime modulus, 2 <= p < 2^31.
class Prime {
 public:
  explicit Prime(std::uint32_t value);

  std::uint32_t value() const noexcept { return value_; }
  friend bool operator==(Prime, Prime) = default;

 private:
  std::uint32_t value_;
};

namespace modp {

inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}
inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}
std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p);
/// Inverse of a nonzero residue (Fermat).
std::uint32_t inv(std::uint32_t a, std::uint32_t p);

}  // namespace modp

class FpScalar {
 public:
  FpScalar(std::int64_t value, Prime modulus);

  std::uint32_t value() const noexcept { return value_; }
  Prime modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  /// Throws std::domain_error for zero.
  FpScalar inverse() const;

  FpScalar operator-() const;
  friend FpScalar operator+(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator-(const FpScalar& a, const FpScalar& b);
  friend FpScalar operator*(const FpScalar& a, const FpScalar& b);
  friend bool operator==(const FpScalar&, const FpScalar&) = default;

 private:
  std::uint32_t value_;
  Prime modulus_;
};

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  /// Zero matrix.
  FpMatrix(std::size_t rows, std::size_t cols, Prime modulus);

  static FpMatrix identity(std::size_t n, Prime modulus);
  /// Entries are reduced mod p; ragged input throws DimensionError.
  static FpMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                            Prime modulus);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Prime modulus() const noexcept { return modulus_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  FpScalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::int64_t value);
  void set_raw(std::size_t r, std::size_t c, std::uint32_t residue) {
    data_[r * cols_ + c] = residue;
  }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  FpMatrix transpose() const;
  FpMatrix scaled(std::int64_t factor) const;
  /// Rows [first, first + count).
  FpMatrix row_block(std::size_t first, std::size_t count) const;
  bool is_zero() const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend bool operator==(const FpMatrix& a, const FpMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  Prime modulus_;
  std::vector<std::uint32_t> data_;
};

/// Vertical concatenation; operands must agree in column count and modulus.
FpMatrix stack(const FpMatrix& top, const FpMatrix& bottom);

struct RowReduction {
  FpMatrix rref;
  std::size_t rank;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row-echelon form. Pivots are the first nonzero entry scanning
/// columns left to right; nonzero rows come first.
RowReduction row_reduce(const FpMatrix& m);

/// Rank via forward elimination only (no back substitution).
std::size_t rank(const FpMatrix& m);

/// Dimension of the span of the given coordinate rows. An empty list spans
/// the zero space; rows of different lengths throw DimensionError.
std::size_t span_dim(const std::vector<std::vector<std::uint32_t>>& vectors,
                     Prime modulus);

std::string to_string(const FpMatrix& m);

}  // namespace frobpush
