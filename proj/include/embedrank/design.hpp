#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "embedrank/bitvec.hpp"
#include "embedrank/matrix.hpp"

namespace embedrank {

/// Sorted point indices of one block.
using Block = std::vector<std::uint32_t>;

/// Points {0..v-1} and an ordered list of blocks. Repeated blocks are
/// allowed; block order is part of the value.
class IncidenceStructure {
 public:
  IncidenceStructure() = default;
  /// Sorts each block; throws BadIndex for out-of-range or repeated points.
  IncidenceStructure(std::size_t v, std::vector<Block> blocks, std::string name = {});

  std::size_t v() const noexcept { return v_; }
  std::size_t b() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& block(std::size_t j) const { return blocks_.at(j); }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// v x b point-by-block incidence matrix over GF(p).
  Matrix incidence(int p = 2) const;
  /// Each block as a bit vector over the points.
  std::vector<BitVec> block_bits() const;
  /// Each point as a bit vector over the blocks (rows of the incidence matrix).
  std::vector<BitVec> point_rows() const;

  /// Uniform block size, or nullopt when sizes differ or there are no blocks.
  std::optional<std::size_t> block_size() const;

  friend bool operator==(const IncidenceStructure& a, const IncidenceStructure& b) {
    return a.v_ == b.v_ && a.blocks_ == b.blocks_;
  }

 private:
  std::size_t v_ = 0;
  std::vector<Block> blocks_;
  std::string name_;
};

struct DesignParams {
  std::size_t t = 0;
  std::size_t v = 0;
  std::size_t k = 0;
  std::uint64_t lambda = 0;
  std::uint64_t r = 0;
  std::uint64_t b = 0;
  std::vector<std::uint64_t> lambda_s;  // lambda_s[s], 0 <= s <= t
  bool symmetric = false;
  bool fisher = true;  // b >= v, meaningful when t >= 2 and v > k > 0
};

/// Partition of block indices into parallel classes.
struct Resolution {
  std::vector<std::vector<std::size_t>> classes;
  std::size_t class_size = 0;

  friend bool operator==(const Resolution&, const Resolution&) = default;
};

/// Throws WrongParameters unless `r` satisfies the resolution invariants
/// for `d` (classes disjoint, covering, each class partitioning the points).
void check_resolution(const IncidenceStructure& d, const Resolution& r);

/// Result of restricting a structure to or away from a block, keeping track
/// of where each surviving point and block came from.
struct Restriction {
  IncidenceStructure design;
  std::vector<std::size_t> point_origin;
  std::vector<std::size_t> block_origin;
};

std::optional<DesignParams> verify_tdesign(const IncidenceStructure& d, std::size_t t);

Restriction residual_map(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty = false);
Restriction derived_map(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty = false);
IncidenceStructure residual(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty = false);
IncidenceStructure derived(const IncidenceStructure& d, std::size_t block_idx, bool keep_empty = false);

/// Intersection size -> number of unordered block pairs.
std::map<std::size_t, std::size_t> intersection_profile(const IncidenceStructure& d);

struct AffineResolution {
  std::size_t q = 0;
  std::size_t mu = 0;
  Resolution resolution;
};

std::optional<AffineResolution> is_affine_resolvable(const IncidenceStructure& d);

bool is_simple(const IncidenceStructure& d);

/// Distinct blocks in order of first appearance, with multiplicities.
struct BlockMultiset {
  std::vector<Block> distinct;
  std::vector<std::size_t> multiplicity;
  std::vector<std::size_t> class_of;  // original block -> index into distinct
};
BlockMultiset block_multiset(const IncidenceStructure& d);

struct GoodBlock {
  IncidenceStructure simple_design;  // S, on the points of B (indexed by rank within B)
  IncidenceStructure substructure;   // D'': residual blocks of size q^(n-1) - q^(n-2)
  std::vector<std::size_t> substructure_origin;  // D'' block -> block of D
  std::vector<std::size_t> residual_points;      // D'' point -> point of D
  Resolution resolution;  // of D'', class i labelled by block i of S
  std::size_t q = 0;
  std::size_t n = 0;
};

/// Parameters (q, n) with v = q^n, k = q^(n-1), lambda = (q^(n-1)-1)/(q-1),
/// n >= 2; nullopt otherwise.
std::optional<std::pair<std::size_t, std::size_t>> affine_family_params(std::size_t v, std::size_t k,
                                                                        std::uint64_t lambda);

/// Throws BadIndex, or WrongParameters when `d` is not an affine resolvable
/// design of the (q^n, q^(n-1), (q^(n-1)-1)/(q-1)) family.
std::optional<GoodBlock> good_block(const IncidenceStructure& d, std::size_t block_idx);

struct NormalBlock {
  IncidenceStructure base;  // the symmetric design whose q copies form the derived design
  bool degenerate = false;  // base has block size 1 (lambda 0)
};

std::optional<NormalBlock> normal_block(const IncidenceStructure& d, std::size_t block_idx, std::size_t q);

}  // namespace embedrank
