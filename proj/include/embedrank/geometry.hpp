#pragma once

#include <cstddef>

#include "embedrank/design.hpp"
#include "embedrank/field.hpp"

namespace embedrank {

/// GF(q) for a prime power q, with the default irreducible. Throws NoField.
Field field_for_order(std::size_t q);

struct AffineGeometry {
  IncidenceStructure design;
  /// Cosets of each d-subspace through the origin, one class per subspace.
  Resolution classical;
};

/// AG_d(n,q): points are GF(q)^n in lexicographic coordinate order, blocks
/// are all cosets of all d-dimensional subspaces. Throws BadDimension, NoField.
AffineGeometry ag_design(std::size_t n, std::size_t q, std::size_t d);

/// PG_d(n,q): points are the normalized nonzero vectors of GF(q)^(n+1),
/// blocks the (d+1)-dimensional subspaces.
IncidenceStructure pg_design(std::size_t n, std::size_t q, std::size_t d);

}  // namespace embedrank
