#pragma once

#include "bipgenus/graph.hpp"

namespace bipgenus {

/// Left-right planarity test (DFS orientation followed by constraint
/// partitioning of return edges). Linear time; no embedding is produced.
/// Parallel copies recorded in a multiplicity map are ignored.
bool is_planar(const SimpleGraph& g);

/// Flattens to n1 + n2 vertices and tests that graph.
bool is_planar(const BipartiteGraph& g);

}  // namespace bipgenus
