#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "embedrank/design.hpp"
#include "embedrank/perm_group.hpp"

namespace embedrank {

/// Canonical serialization of the point/block incidence relation; equal
/// for two structures exactly when they are isomorphic.
struct CanonicalCert {
  std::string bytes;  // .des text of the canonical form

  /// Lowercase SHA-256 of bytes.
  std::string hex() const;
  friend bool operator==(const CanonicalCert&, const CanonicalCert&) = default;
  friend auto operator<=>(const CanonicalCert&, const CanonicalCert&) = default;
};

struct CanonicalForm {
  CanonicalCert cert;
  IncidenceStructure canonical;
  /// Vertex (points 0..v-1, then blocks v..v+b-1) -> canonical position.
  Perm labeling;
};

/// Automorphisms as permutations of points followed by blocks.
struct PermGroup {
  std::size_t points = 0;
  std::size_t blocks = 0;
  std::vector<Perm> generators;
  std::uint64_t order = 1;

  std::size_t degree() const noexcept { return points + blocks; }
};

struct IsoStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
};

CanonicalForm canonical_form(const IncidenceStructure& d, IsoStats* stats = nullptr);
CanonicalCert canonical_cert(const IncidenceStructure& d);
bool are_isomorphic(const IncidenceStructure& a, const IncidenceStructure& b);

/// Generators from the canonical-labeling search; order from a stabilizer
/// chain with base in natural point order.
PermGroup automorphism_group(const IncidenceStructure& d, IsoStats* stats = nullptr);

/// Orbit partition; each orbit sorted, orbits ordered by least element.
using OrbitPartition = std::vector<std::vector<std::size_t>>;

OrbitPartition point_orbits(const PermGroup& g);
OrbitPartition block_orbits(const PermGroup& g);
/// Action induced on a list of resolutions by mapping every class setwise.
/// Throws WrongParameters if some image is not in the list.
OrbitPartition resolution_orbits(const PermGroup& g, const std::vector<Resolution>& resolutions);

std::vector<std::size_t> orbit_sizes(const OrbitPartition& orbits);

/// Applies a point/block permutation to d: block j of the result is the
/// image of block g^-1(j).
IncidenceStructure apply(const IncidenceStructure& d, const Perm& g);
bool is_automorphism(const IncidenceStructure& d, const Perm& g);

}  // namespace embedrank
