#include <doctest.h>

#include <fstream>

#include "bipgenus/genus.hpp"
#include "bipgenus/planarity.hpp"
#include "bipgenus/sampler.hpp"
#include "bipgenus/structure.hpp"
#include "oracles.hpp"

using namespace bipgenus;

namespace {

SimpleGraph complete(Vertex n) {
  std::vector<SimpleEdge> e;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) e.push_back({a, b});
  }
  return build_simple(n, e);
}

}  // namespace

TEST_CASE("Kuratowski graphs and easy planar families") {
  CHECK_FALSE(is_planar(complete_bipartite(3, 3)));
  CHECK_FALSE(is_planar(complete(5)));
  CHECK(is_planar(complete(4)));
  CHECK(is_planar(complete_bipartite(2, 10)));
  CHECK(is_planar(build_bipartite(0 + 4, 4, {})));
  CHECK(is_planar(build_simple(0, {})));
  CHECK_FALSE(is_planar(complete_bipartite(3, 5)));
  CHECK_FALSE(is_planar(complete(7)));
}

TEST_CASE("subdivided K33 with pendant trees is not planar") {
  // K33 on {0,1,2} x {3,4,5}, edge 0-3 subdivided by 6, a pendant path at 7-8.
  std::vector<SimpleEdge> e{{0, 6}, {3, 6}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}, {5, 7}, {7, 8}};
  CHECK_FALSE(is_planar(build_simple(9, e)));
  e.erase(e.begin() + 4);  // drop 1-3
  CHECK(is_planar(build_simple(9, e)));
}

TEST_CASE("property: forests are planar") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    Xoshiro256 rng({31, t});
    const auto n = static_cast<Vertex>(1 + rng() % 60);
    std::vector<SimpleEdge> e;
    for (Vertex v = 1; v < n; ++v) {
      if (rng.uniform() < 0.8) e.push_back({static_cast<Vertex>(rng() % v), v});
    }
    CHECK(is_planar(build_simple(n, e)));
  }
}

TEST_CASE("property: planar bipartite graphs have e <= 2v - 4") {
  for (std::uint64_t t = 0; t < 500; ++t) {
    Xoshiro256 rng({32, t});
    const auto n1 = static_cast<Vertex>(2 + rng() % 10);
    const auto n2 = static_cast<Vertex>(2 + rng() % 10);
    const auto g = sample_bipartite(n1, n2, rng.uniform(), {32, t});
    if (is_planar(g) && g.vertex_count() >= 3) CHECK(g.edge_count() + 4 <= 2 * g.vertex_count());
  }
}

TEST_CASE("agrees with the frozen networkx fixtures") {
  std::ifstream in(std::string(BIPGENUS_TEST_DATA) + "/planarity_networkx.txt");
  REQUIRE(in);
  int count = 0;
  in >> count;
  REQUIRE(count == 400);
  int agree = 0;
  for (int i = 0; i < count; ++i) {
    int expected = -1;
    in >> expected;
    const auto g = std::get<SimpleGraph>(read_graph(in));
    agree += is_planar(g) == (expected == 1);
  }
  CHECK(agree == count);
}

TEST_CASE("property: planar iff exact genus is zero on graphs with at most 12 edges") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Xoshiro256 rng({33, t});
    const auto n = static_cast<Vertex>(5 + rng() % 4);
    const auto g = oracle::random_simple(n, 6 + rng() % 7, rng);
    CHECK(is_planar(g) == (exact_genus_small(g) == 0));
  }
}

TEST_CASE("property: no complex component implies planar") {
  for (std::uint64_t t = 0; t < 300; ++t) {
    Xoshiro256 rng({34, t});
    const auto n1 = static_cast<Vertex>(2 + rng() % 200);
    const auto n2 = static_cast<Vertex>(1 + rng() % 200);
    const auto g = sample_bipartite(n1, n2, 0.9 / std::sqrt(double(n1) * n2), {34, t});
    if (classify_components(g, 0.0).report.kappa_complex == 0) CHECK(is_planar(g));
  }
}
