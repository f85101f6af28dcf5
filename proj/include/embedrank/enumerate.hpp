#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "embedrank/bitvec.hpp"

namespace embedrank {

/// Gray-code walk over offset + span(basis) for codeword indices [lo, hi).
/// Index i corresponds to the combination gray(i) = i ^ (i >> 1) of basis
/// rows (bit j selects row j). `visit(words, i)` sees the current word.
/// All basis rows and the offset must have the same length.
template <class Visit>
void gray_walk(std::span<const BitVec> basis, const BitVec& offset, std::uint64_t lo, std::uint64_t hi,
               Visit&& visit) {
  if (lo >= hi) return;
  const std::size_t nw = offset.word_count();
  std::vector<std::uint64_t> cur(offset.words().begin(), offset.words().end());
  const std::uint64_t g = lo ^ (lo >> 1);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if ((g >> j) & 1U) {
      const auto row = basis[j].words();
      for (std::size_t w = 0; w < nw; ++w) cur[w] ^= row[w];
    }
  }
  for (std::uint64_t i = lo;;) {
    visit(static_cast<const std::uint64_t*>(cur.data()), i);
    if (++i >= hi) break;
    const auto row = basis[static_cast<std::size_t>(std::countr_zero(i))].words();
    for (std::size_t w = 0; w < nw; ++w) cur[w] ^= row[w];
  }
}

inline std::size_t popcount_words(const std::uint64_t* words, std::size_t nw) noexcept {
  std::size_t c = 0;
  for (std::size_t w = 0; w < nw; ++w) c += static_cast<std::size_t>(std::popcount(words[w]));
  return c;
}

/// Splits [0, total) into `parts` contiguous ranges; range i is
/// [bounds[i], bounds[i+1]).
inline std::vector<std::uint64_t> split_range(std::uint64_t total, std::size_t parts) {
  if (parts == 0) parts = 1;
  std::vector<std::uint64_t> bounds(parts + 1);
  for (std::size_t i = 0; i <= parts; ++i) bounds[i] = total / parts * i + std::min<std::uint64_t>(i, total % parts);
  return bounds;
}

}  // namespace embedrank
