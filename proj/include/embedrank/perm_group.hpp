#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace embedrank {

/// Permutation as an image array: p[i] is the image of i.
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::size_t n);
bool is_identity(const Perm& p);
/// (a * b)(x) = a(b(x)): apply b first.
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);

/// Base and strong generating set built by deterministic Schreier-Sims.
/// Base points are chosen as the least moved point, so the base is in
/// increasing order.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, const std::vector<Perm>& generators);

  std::size_t degree() const noexcept { return degree_; }
  /// Exact order; throws TooLarge if it does not fit in 64 bits.
  std::uint64_t order() const;
  const std::vector<std::uint32_t>& base() const noexcept { return base_; }
  std::vector<std::size_t> basic_orbit_sizes() const;
  bool contains(const Perm& g) const;

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<std::uint32_t> orbit;
    std::vector<std::int64_t> trans;  // point -> index into transversal, -1 if not in orbit
    std::vector<Perm> transversal;
  };

  void add_level(std::uint32_t base_point);
  void add_to_level(std::size_t level, std::size_t gen);
  /// Sifts g from `level`; returns the residue and the level where it stopped.
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t level) const;
  void insert(const Perm& h, std::size_t from_level);

  std::size_t degree_;
  std::vector<std::uint32_t> base_;
  std::vector<Perm> strong_;
  std::vector<Level> levels_;
  // Schreier generators already sifted, per level, as (orbit point, generator)
  std::vector<std::set<std::pair<std::uint32_t, std::size_t>>> checked_;
};

}  // namespace embedrank
