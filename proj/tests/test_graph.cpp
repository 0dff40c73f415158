#include <doctest.h>

#include <sstream>

#include "bipgenus/graph.hpp"
#include "bipgenus/sampler.hpp"
#include "oracles.hpp"

using namespace bipgenus;

TEST_CASE("build_bipartite examples") {
  const auto k22 = build_bipartite(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(k22.edge_count() == 4);
  for (Vertex u = 0; u < 2; ++u) CHECK(k22.degree_n1(u) == 2);
  for (Vertex w = 0; w < 2; ++w) CHECK(k22.degree_n2(w) == 2);

  const auto empty = build_bipartite(3, 2, {});
  CHECK(empty.vertex_count() == 5);
  CHECK(empty.edge_count() == 0);

  CHECK_THROWS_AS(build_bipartite(1, 1, {{0, 0}, {0, 0}}), GraphError);
  CHECK_THROWS_AS(build_bipartite(1, 1, {{1, 0}}), GraphError);
  CHECK_THROWS_AS(build_bipartite(1, 1, {{0, 1}}), GraphError);
}

TEST_CASE("build_simple validation") {
  CHECK_THROWS_AS(build_simple(3, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(build_simple(3, {{0, 3}}), GraphError);
  CHECK_THROWS_AS(build_simple(3, {{0, 1}, {1, 0}}), GraphError);
  CHECK_THROWS_AS(build_simple(3, {{0, 1}}, std::vector<std::uint32_t>{0}), GraphError);
  CHECK_THROWS_AS(build_simple(3, {{0, 1}}, std::vector<std::uint32_t>{1, 1}), GraphError);

  const auto g = build_simple(3, {{2, 0}, {1, 0}}, std::vector<std::uint32_t>{3, 1});
  CHECK(g.edges()[0] == SimpleEdge{0, 1});
  CHECK(g.edges()[1] == SimpleEdge{0, 2});
  CHECK(g.multiplicity()[0] == 1);
  CHECK(g.multiplicity()[1] == 3);
  CHECK(g.edge_count_with_multiplicity() == 4);
  CHECK_FALSE(g.simplified().has_multiplicity());
}

TEST_CASE("connected_components examples") {
  const auto k33 = connected_components(complete_bipartite(3, 3));
  REQUIRE(k33.size() == 1);
  CHECK(k33[0].excess == 4);
  CHECK(k33[0].cls == ComponentClass::complex);

  const auto c4 = connected_components(build_bipartite(2, 3, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].cls == ComponentClass::unicyclic);
  CHECK(c4[0].excess == 1);
  CHECK(c4[1].cls == ComponentClass::tree);
  CHECK(c4[1].vertex_count() == 1);
  CHECK(c4[1].verts_n2 == 1);

  const auto empty = connected_components(build_bipartite(3, 2, {}));
  CHECK(empty.size() == 5);
  for (const auto& c : empty) {
    CHECK(c.cls == ComponentClass::tree);
    CHECK(c.vertex_count() == 1);
  }
}

TEST_CASE("component ordering follows the smallest flat vertex") {
  // N2 vertex 0 (flat 3) is joined to N1 vertex 2; N1 vertex 0 and 1 are isolated.
  const auto g = build_bipartite(3, 2, {{2, 0}, {1, 1}});
  const auto index = component_index(g);
  CHECK(index.component_of[0] == 0);
  CHECK(index.component_of[1] == 1);
  CHECK(index.component_of[4] == 1);
  CHECK(index.component_of[2] == 2);
  CHECK(index.component_of[3] == 2);
}

TEST_CASE("property: partition, class counts and cycle-rank identity on random graphs") {
  for (std::uint64_t t = 0; t < 200; ++t) {
    Xoshiro256 rng({11, t});
    const auto n1 = static_cast<Vertex>(2 + rng() % 30);
    const auto n2 = static_cast<Vertex>(1 + rng() % 30);
    const double p = rng.uniform() * 0.2;
    const auto g = sample_bipartite(n1, n2, p, {11, t});

    std::uint64_t left = 0, right = 0;
    for (Vertex u = 0; u < n1; ++u) left += g.degree_n1(u);
    for (Vertex w = 0; w < n2; ++w) right += g.degree_n2(w);
    CHECK(left == g.edge_count());
    CHECK(right == g.edge_count());

    const auto index = component_index(g);
    std::uint64_t verts = 0, excess = 0, edges = 0;
    std::vector<std::uint64_t> sizes(index.summaries.size(), 0);
    for (auto c : index.component_of) ++sizes[c];
    for (const auto& c : index.summaries) {
      verts += c.vertex_count();
      excess += c.excess;
      edges += c.edge_count;
      CHECK(sizes[c.id] == c.vertex_count());
      CHECK((c.excess == 0) == (c.cls == ComponentClass::tree));
      CHECK((c.excess == 1) == (c.cls == ComponentClass::unicyclic));
      CHECK((c.excess >= 2) == (c.cls == ComponentClass::complex));
    }
    CHECK(verts == g.vertex_count());
    CHECK(edges == g.edge_count());
    CHECK(excess + g.vertex_count() == g.edge_count() + index.summaries.size());
  }
}

TEST_CASE("property: text format round-trips bit-exactly") {
  for (std::uint64_t t = 0; t < 100; ++t) {
    Xoshiro256 rng({5, t});
    const auto n1 = static_cast<Vertex>(1 + rng() % 40);
    const auto n2 = static_cast<Vertex>(1 + rng() % 40);
    const auto g = sample_bipartite(n1, n2, rng.uniform() * 0.3, {5, t});
    const auto text = to_text(g);
    std::istringstream in(text);
    const auto back = std::get<BipartiteGraph>(read_graph(in));
    CHECK(back == g);
    CHECK(to_text(back) == text);

    const auto s = sample_binomial_graph(static_cast<Vertex>(1 + rng() % 40), rng.uniform() * 0.3, {6, t});
    std::istringstream in2(to_text(s));
    const auto sback = std::get<SimpleGraph>(read_graph(in2));
    CHECK(sback == s);
    CHECK(to_text(sback) == to_text(s));
  }
}

TEST_CASE("reader rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
  };
  CHECK_THROWS_AS(parse("bipartite 2 2 1\n"), GraphError);        // missing edge
  CHECK_THROWS_AS(parse("bipartite 2 2 1\n0 2\n"), GraphError);   // out of range
  CHECK_THROWS_AS(parse("simple 3 1\n1 1\n"), GraphError);        // self-loop
  CHECK_THROWS_AS(parse("simple 3 1\n-1 2\n"), GraphError);       // sign
  CHECK_THROWS_AS(parse("tripartite 1 1 1 0\n"), GraphError);     // header
  CHECK_THROWS_AS(parse("simple 3 2\n0 1\n0 1\n"), GraphError);   // duplicate
  CHECK(std::get<SimpleGraph>(parse("simple 3 1\n2 0\n")).edges()[0] == SimpleEdge{0, 2});
}

TEST_CASE("flatten maps N2 vertex w to n1 + w") {
  const auto g = build_bipartite(2, 3, {{0, 2}, {1, 0}});
  const auto f = g.flatten();
  CHECK(f.vertex_count() == 5);
  REQUIRE(f.edge_count() == 2);
  CHECK(f.edges()[0] == SimpleEdge{0, 4});
  CHECK(f.edges()[1] == SimpleEdge{1, 2});
}

TEST_CASE("induced_on_components renumbers in flat order") {
  const auto g = build_simple(6, {{0, 1}, {2, 3}, {3, 4}, {2, 4}});
  const auto index = component_index(g);
  std::vector<bool> selected(index.summaries.size(), false);
  selected[index.component_of[3]] = true;
  std::vector<Vertex> original;
  const auto sub = induced_on_components(g, index, selected, &original);
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.edge_count() == 3);
  CHECK(original == std::vector<Vertex>{2, 3, 4});
}
