#pragma once
// Brute-force reference implementations used only by the tests. They share no
// code with the library beyond the graph containers.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "bipgenus/graph.hpp"
#include "bipgenus/sampler.hpp"

namespace oracle {

using bipgenus::SimpleEdge;
using bipgenus::SimpleGraph;
using bipgenus::Vertex;

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Cycles as edge sets, by length: a subset is a cycle iff it is connected and
// every touched vertex has degree exactly two.
inline std::map<int, std::uint64_t> cycles_by_length(Vertex n, const std::vector<SimpleEdge>& edges) {
  std::map<int, std::uint64_t> out;
  const std::size_t m = edges.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> deg(n, 0);
    Dsu dsu(n);
    int len = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) {
        ++deg[edges[i].u];
        ++deg[edges[i].v];
        dsu.unite(edges[i].u, edges[i].v);
        ++len;
      }
    }
    bool ok = true;
    int root = -1;
    for (Vertex v = 0; v < n && ok; ++v) {
      if (deg[v] == 0) continue;
      if (deg[v] != 2) ok = false;
      if (root == -1) root = dsu.find(v);
      if (dsu.find(v) != root) ok = false;
    }
    if (ok) ++out[len];
  }
  return out;
}

// Probability-weighted count of tree components over every edge subset of K_{n1,n2}.
inline double expected_trees_enumerated(int n1, int n2, double p) {
  const int m = n1 * n2;
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const int k = std::popcount(mask);
    const double weight = std::pow(p, k) * std::pow(1.0 - p, m - k);
    Dsu dsu(n1 + n2);
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) dsu.unite(i / n2, n1 + i % n2);
    }
    std::map<int, std::pair<int, int>> comp;  // root -> (vertices, edges)
    for (int v = 0; v < n1 + n2; ++v) ++comp[dsu.find(v)].first;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) ++comp[dsu.find(i / n2)].second;
    }
    int trees = 0;
    for (const auto& [root, ve] : comp) trees += ve.second == ve.first - 1;
    total += weight * trees;
  }
  return total;
}

// Random simple graph with exactly m edges (m clipped to C(n,2)).
inline SimpleGraph random_simple(Vertex n, std::size_t m, bipgenus::Xoshiro256& rng) {
  std::set<std::pair<Vertex, Vertex>> chosen;
  m = std::min<std::size_t>(m, std::size_t{n} * (n - 1) / 2);
  while (chosen.size() < m) {
    Vertex a = static_cast<Vertex>(rng() % n), b = static_cast<Vertex>(rng() % n);
    if (a == b) continue;
    chosen.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<SimpleEdge> edges;
  for (auto [a, b] : chosen) edges.push_back({a, b});
  return bipgenus::build_simple(n, edges);
}

inline std::vector<SimpleEdge> to_vector(std::span<const SimpleEdge> e) { return {e.begin(), e.end()}; }

}  // namespace oracle
