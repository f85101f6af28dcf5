#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "embedrank/design.hpp"

namespace embedrank {

using ParallelClass = std::vector<std::size_t>;

/// Every set of v/k pairwise disjoint blocks, each listed in increasing
/// block order; the list is lexicographic. Throws NonUniformBlockSize.
/// `workers` <= 0 uses the OpenMP default.
std::vector<ParallelClass> parallel_classes(const IncidenceStructure& d, int workers = 0);
std::vector<ParallelClass> parallel_classes_serial(const IncidenceStructure& d);

/// All partitions of the blocks into parallel classes, by exact cover that
/// always branches on the lowest uncovered block. Throws CapExceeded when
/// more than `limit` resolutions exist.
std::vector<Resolution> resolutions(const IncidenceStructure& d, std::optional<std::size_t> limit = std::nullopt,
                                    int workers = 0);
std::vector<Resolution> resolutions_serial(const IncidenceStructure& d,
                                           std::optional<std::size_t> limit = std::nullopt);

/// Same, over a precomputed class list.
std::vector<Resolution> resolutions_from_classes(const IncidenceStructure& d,
                                                 const std::vector<ParallelClass>& classes,
                                                 std::optional<std::size_t> limit, int workers);

}  // namespace embedrank
