#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "embedrank/bitvec.hpp"

namespace embedrank {

/// Dense matrix over a prime field GF(p), p < 256. Rows of a GF(2) matrix
/// are stored bit-packed; other characteristics use one byte per entry.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, int p);

  static Matrix from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols, int p);
  static Matrix from_bit_rows(std::vector<BitVec> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int modulus() const noexcept { return p_; }
  bool packed() const noexcept { return p_ == 2; }

  int get(std::size_t r, std::size_t c) const noexcept {
    return p_ == 2 ? static_cast<int>(bits_[r].test(c)) : bytes_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, int value) noexcept;

  /// Packed row; only valid when packed().
  const BitVec& bit_row(std::size_t r) const noexcept { return bits_[r]; }
  const std::vector<BitVec>& bit_rows() const noexcept { return bits_; }
  std::vector<int> row(std::size_t r) const;

  void append_row(const std::vector<int>& values);
  void append_row(const BitVec& bits);

  Matrix transposed() const;
  Matrix select_columns(const std::vector<std::size_t>& keep) const;
  Matrix select_rows(const std::vector<std::size_t>& keep) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int p_ = 2;
  std::vector<BitVec> bits_;
  std::vector<std::uint8_t> bytes_;
};

struct RrefResult {
  Matrix reduced;                   // nonzero rows only, rank x cols
  std::vector<std::size_t> pivots;  // strictly increasing
};

std::size_t rank(const Matrix& m);
RrefResult rref(const Matrix& m);
/// Basis of {x : M x^T = 0}, one vector per row.
Matrix nullspace(const Matrix& m);

/// Byte-wise elimination for any modulus, including p = 2; the reference
/// the bit-packed path is checked against.
std::size_t rank_generic(const Matrix& m);

}  // namespace embedrank
