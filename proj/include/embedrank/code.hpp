#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "embedrank/design.hpp"
#include "embedrank/matrix.hpp"

namespace embedrank {

/// Default cap on the number of codewords an enumeration may visit;
/// the EMBEDRANK_CAP environment variable overrides it.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 28;
std::uint64_t enumeration_cap();

/// Linear code over GF(p): the row space of its generator matrix, with the
/// nonzero rows of the RREF cached as basis.
class LinearCode {
 public:
  LinearCode() = default;
  explicit LinearCode(Matrix generators);

  static LinearCode from_rows(const Matrix& m) { return LinearCode(m); }
  static LinearCode from_cols(const Matrix& m) { return LinearCode(m.transposed()); }

  std::size_t length() const noexcept { return generators_.cols(); }
  int modulus() const noexcept { return generators_.modulus(); }
  std::size_t dimension() const noexcept { return basis_.rows(); }
  const Matrix& generators() const noexcept { return generators_; }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Number of codewords p^dim, or nullopt if it overflows 64 bits.
  std::optional<std::uint64_t> size() const;

  bool contains(const std::vector<int>& word) const;
  bool contains(const BitVec& word) const;

 private:
  Matrix generators_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// weight -> number of codewords A_i, zero entries omitted.
struct WeightDistribution {
  std::map<std::size_t, std::uint64_t> counts;

  std::uint64_t at(std::size_t w) const {
    auto it = counts.find(w);
    return it == counts.end() ? 0 : it->second;
  }
  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (const auto& [w, c] : counts) s += c;
    return s;
  }
  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;
};

/// Throws TooLarge when the code has more than `cap` codewords.
WeightDistribution weight_distribution(const LinearCode& c, int workers = 0,
                                       std::optional<std::uint64_t> cap = std::nullopt);
WeightDistribution weight_distribution_serial(const LinearCode& c, std::optional<std::uint64_t> cap = std::nullopt);

/// Minimum nonzero weight; 0 for the zero code.
std::size_t min_weight(const LinearCode& c, int workers = 0);

/// All codewords of weight w, one per row, in enumeration order.
Matrix codewords_of_weight(const LinearCode& c, std::size_t w, int workers = 0);
Matrix codewords_of_weight_serial(const LinearCode& c, std::size_t w);

/// Puncture c on the support of y. Throws NotACodeword.
LinearCode residual_code(const LinearCode& c, const std::vector<int>& y);

struct HillNewtonReport {
  bool guaranteed = false;  // wt(y) equals the minimum weight
  std::size_t weight = 0;
  std::size_t min_weight = 0;
  std::size_t drop = 0;  // dim C - dim Res(C, y)
};
HillNewtonReport hill_newton(const LinearCode& c, const std::vector<int>& y);

/// floor((r + lambda - 1) / (2 lambda)), the number of errors majority-logic
/// decoding with r check sums sharing at most lambda positions corrects.
std::uint64_t rudolph_bound(std::uint64_t r, std::uint64_t lambda);

/// Restricted Johnson bound on binary constant-weight-w words of length n
/// at pairwise distance >= d; nullopt when its denominator is not positive.
std::optional<std::uint64_t> johnson_restricted(std::uint64_t n, std::uint64_t d, std::uint64_t w);

/// Binary Reed-Muller code of order r and length 2^m. Throws BadOrder.
LinearCode rm_code(std::size_t r, std::size_t m);
LinearCode punctured_rm_code(std::size_t r, std::size_t m, std::size_t coord);

/// True iff the Boolean function (truth table of length 4^m) has a flat
/// Walsh spectrum of magnitude 2^m.
bool is_bent(const std::vector<int>& truth_table);
/// span(f, RM(1, 2m)). Throws NotBent.
LinearCode sdp_code(const std::vector<int>& bent_truth_table);
/// Supports of the minimum-weight codewords, as blocks on the coordinates.
IncidenceStructure min_weight_design(const LinearCode& c, int workers = 0);

}  // namespace embedrank
