#include "embedrank/matrix.hpp"

#include <string>
#include <utility>

#include "embedrank/error.hpp"
#include "embedrank/field.hpp"

namespace embedrank {
namespace {

void check_modulus(int p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeModulus, "matrix modulus " + std::to_string(p) + " is not prime");
  if (p >= 256) throw Error(ErrorCode::NonPrimeModulus, "matrix modulus must be below 256");
}

std::vector<int> inverse_table(int p) {
  std::vector<int> inv(static_cast<std::size_t>(p), 0);
  for (int a = 1; a < p; ++a) {
    for (int b = 1; b < p; ++b) {
      if (a * b % p == 1) inv[static_cast<std::size_t>(a)] = b;
    }
  }
  return inv;
}

/// In-place reduced row echelon form of a row-major byte matrix.
std::vector<std::size_t> eliminate_bytes(std::vector<std::uint8_t>& a, std::size_t rows, std::size_t cols, int p) {
  const auto inv = inverse_table(p);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel * cols + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    }
    const int s = inv[a[r * cols + c]];
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = static_cast<std::uint8_t>(a[r * cols + j] * s % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      const int f = p - a[i * cols + c];
      for (std::size_t j = c; j < cols; ++j) {
        a[i * cols + j] = static_cast<std::uint8_t>((a[i * cols + j] + f * a[r * cols + j]) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::size_t> eliminate_bits(std::vector<BitVec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].test(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    const std::size_t w = c / kWordBits;
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    const auto pivot = rows[r].words();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r) continue;
      auto row = rows[i].words();
      if (row[w] & mask) {
        for (std::size_t k = w; k < row.size(); ++k) row[k] ^= pivot[k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::uint8_t> to_bytes(const Matrix& m) {
  std::vector<std::uint8_t> a(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i * m.cols() + j] = static_cast<std::uint8_t>(m.get(i, j));
  }
  return a;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, int p) : rows_(rows), cols_(cols), p_(p) {
  check_modulus(p);
  if (p == 2) {
    bits_.assign(rows, BitVec(cols));
  } else {
    bytes_.assign(rows * cols, 0);
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<int>>& rows, std::size_t cols, int p) {
  Matrix m(0, cols, p);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Matrix Matrix::from_bit_rows(std::vector<BitVec> rows, std::size_t cols) {
  Matrix m(0, cols, 2);
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::BadDimension, "row length mismatch");
  }
  m.rows_ = rows.size();
  m.bits_ = std::move(rows);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, int value) noexcept {
  const int v = ((value % p_) + p_) % p_;
  if (p_ == 2) {
    bits_[r].set(c, v != 0);
  } else {
    bytes_[r * cols_ + c] = static_cast<std::uint8_t>(v);
  }
}

std::vector<int> Matrix::row(std::size_t r) const {
  std::vector<int> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
  return out;
}

void Matrix::append_row(const std::vector<int>& values) {
  if (values.size() != cols_) throw Error(ErrorCode::BadDimension, "row length mismatch");
  if (p_ == 2) {
    BitVec b(cols_);
    for (std::size_t c = 0; c < cols_; ++c) b.set(c, (values[c] & 1) != 0);
    bits_.push_back(std::move(b));
  } else {
    for (int v : values) bytes_.push_back(static_cast<std::uint8_t>(((v % p_) + p_) % p_));
  }
  ++rows_;
}

void Matrix::append_row(const BitVec& bits) {
  if (bits.size() != cols_) throw Error(ErrorCode::BadDimension, "row length mismatch");
  if (p_ == 2) {
    bits_.push_back(bits);
  } else {
    for (std::size_t c = 0; c < cols_; ++c) bytes_.push_back(bits.test(c) ? 1 : 0);
  }
  ++rows_;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (int v = get(i, j)) t.set(j, i, v);
    }
  }
  return t;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& keep) const {
  Matrix out(rows_, keep.size(), p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if (int v = get(i, keep[j])) out.set(i, j, v);
    }
  }
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& keep) const {
  Matrix out(0, cols_, p_);
  for (auto r : keep) {
    if (p_ == 2) {
      out.append_row(bits_[r]);
    } else {
      out.append_row(row(r));
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.p_ != b.p_) return false;
  return a.p_ == 2 ? a.bits_ == b.bits_ : a.bytes_ == b.bytes_;
}

RrefResult rref(const Matrix& m) {
  RrefResult out;
  if (m.packed()) {
    std::vector<BitVec> rows = m.bit_rows();
    out.pivots = eliminate_bits(rows, m.cols());
    rows.resize(out.pivots.size());
    out.reduced = Matrix::from_bit_rows(std::move(rows), m.cols());
    return out;
  }
  auto a = to_bytes(m);
  out.pivots = eliminate_bytes(a, m.rows(), m.cols(), m.modulus());
  out.reduced = Matrix(out.pivots.size(), m.cols(), m.modulus());
  for (std::size_t i = 0; i < out.pivots.size(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.reduced.set(i, j, a[i * m.cols() + j]);
  }
  return out;
}

std::size_t rank(const Matrix& m) {
  if (m.packed()) {
    std::vector<BitVec> rows = m.bit_rows();
    return eliminate_bits(rows, m.cols()).size();
  }
  return rank_generic(m);
}

std::size_t rank_generic(const Matrix& m) {
  auto a = to_bytes(m);
  return eliminate_bytes(a, m.rows(), m.cols(), m.modulus()).size();
}

Matrix nullspace(const Matrix& m) {
  const auto r = rref(m);
  const int p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  Matrix basis(0, m.cols(), p);
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      const int e = r.reduced.get(i, free);
      v[r.pivots[i]] = (p - e) % p;
    }
    basis.append_row(v);
  }
  return basis;
}

}  // namespace embedrank
