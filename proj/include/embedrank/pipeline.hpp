#pragma once

#include <cstddef>
#include <optional>

#include "embedrank/design.hpp"
#include "embedrank/embedding.hpp"
#include "embedrank/iso.hpp"

namespace embedrank {

/// Least block of the first block orbit of the given length, if any.
std::optional<std::size_t> block_in_orbit(const IncidenceStructure& d, std::size_t orbit_length);

/// One round of the embedding search, with the first result class not
/// isomorphic to any of `known` singled out.
struct SearchStage {
  std::size_t block = 0;
  EmbeddingSearchResult result;
  std::optional<IncidenceStructure> discovered;
};

SearchStage search_stage(const IncidenceStructure& d, std::size_t block_idx,
                         const std::vector<IncidenceStructure>& known, int workers = 0);

/// AG_2(3,4) and the two designs reached from it by repeated embedding:
/// E1 from the residual of AG_2(3,4), E2 from a block of E1 whose orbit has
/// length 3.
struct AffineFamily64 {
  IncidenceStructure ag;
  IncidenceStructure e1;
  IncidenceStructure e2;
  SearchStage first;
  SearchStage second;
};

AffineFamily64 discover_family(int workers = 0);

}  // namespace embedrank
