#include "bipgenus/projection.hpp"

#include <algorithm>
#include <cassert>
#include <vector>

namespace bipgenus {

ProjectionReport two_centre(const BipartiteGraph& g) {
  ProjectionReport out;
  std::vector<SimpleEdge> paths;
  for (Vertex w = 0; w < g.n2(); ++w) {
    const auto deg = g.degree_n2(w);
    if (deg <= 1) {
      ++out.v1_count;
    } else if (deg == 2) {
      auto nb = g.neighbors_n2(w);
      assert(nb[0] != nb[1]);  // simple input: two distinct N1 neighbours, sorted
      paths.push_back({nb[0], nb[1]});
    } else {
      ++out.v2_count;
      out.z_count += deg;
    }
  }
  out.degree_two_count = paths.size();

  std::sort(paths.begin(), paths.end());
  std::vector<SimpleEdge> edges;
  std::vector<std::uint32_t> mult;
  for (std::size_t i = 0; i < paths.size();) {
    std::size_t j = i;
    while (j < paths.size() && paths[j] == paths[i]) ++j;
    edges.push_back(paths[i]);
    mult.push_back(static_cast<std::uint32_t>(j - i));
    ++out.multiplicity_histogram[j - i];
    i = j;
  }
  out.h = build_simple(g.n1(), edges);
  out.h3 = build_simple(g.n1(), std::move(edges), std::move(mult));
  return out;
}

}  // namespace bipgenus
