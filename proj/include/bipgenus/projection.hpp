#pragma once

#include <cstdint>
#include <map>

#include "bipgenus/graph.hpp"

namespace bipgenus {

/// The 2-centre H of a bipartite graph G and the bookkeeping of its
/// construction G -> H1 (drop degree 0/1 N2 vertices) -> H2 (drop degree >= 3
/// N2 vertices) -> H3 (replace each degree-2 vertex by an edge) -> H
/// (collapse parallel classes).
struct ProjectionReport {
  SimpleGraph h;   // on N1, no parallel edges
  SimpleGraph h3;  // same edge pairs as h, with the parallel-class sizes as multiplicity
  /// Edges of G incident to N2 vertices of degree >= 3.
  std::uint64_t z_count = 0;
  /// Parallel-class size -> number of H edges with that class size.
  std::map<std::uint64_t, std::uint64_t> multiplicity_histogram;
  std::uint64_t v1_count = 0;  // N2 vertices of degree 0 or 1
  std::uint64_t v2_count = 0;  // N2 vertices of degree >= 3
  std::uint64_t degree_two_count = 0;
};

ProjectionReport two_centre(const BipartiteGraph& g);

}  // namespace bipgenus
