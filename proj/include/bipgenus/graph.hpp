#pragma once

// Sparse graph substrate: bipartite and simple graphs in CSR form, union-find
// connectivity, per-component profiles and the line-based text format.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bipgenus {

using Vertex = std::uint32_t;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge of a bipartite graph: `left` indexes N1, `right` indexes N2.
struct BipartiteEdge {
  Vertex left = 0;
  Vertex right = 0;
  friend auto operator<=>(const BipartiteEdge&, const BipartiteEdge&) = default;
};

/// Unordered edge of a simple graph, stored with `u < v`.
struct SimpleEdge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const SimpleEdge&, const SimpleEdge&) = default;
};

/// Compressed adjacency: neighbours of vertex i are
/// targets[offsets[i] .. offsets[i+1]), sorted ascending.
struct Csr {
  std::vector<std::uint64_t> offsets{0};
  std::vector<Vertex> targets;

  std::size_t vertex_count() const { return offsets.size() - 1; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets[v + 1] - offsets[v]; }
};

class SimpleGraph;

/// The sampled object G(n1, n2, p). Immutable after construction.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  Vertex n1() const { return n1_; }
  Vertex n2() const { return n2_; }
  std::size_t vertex_count() const { return std::size_t{n1_} + n2_; }
  std::size_t edge_count() const { return edges_.size(); }

  /// Edges in lexicographic (left, right) order.
  std::span<const BipartiteEdge> edges() const { return edges_; }

  std::span<const Vertex> neighbors_n1(Vertex u) const { return left_.neighbors(u); }
  std::span<const Vertex> neighbors_n2(Vertex w) const { return right_.neighbors(w); }
  std::size_t degree_n1(Vertex u) const { return left_.degree(u); }
  std::size_t degree_n2(Vertex w) const { return right_.degree(w); }

  /// Flat vertex index: N1 vertex u is u, N2 vertex w is n1 + w.
  Vertex flat_n2(Vertex w) const { return n1_ + w; }

  /// The same graph as a simple graph on n1 + n2 flat-indexed vertices.
  SimpleGraph flatten() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
    return a.n1_ == b.n1_ && a.n2_ == b.n2_ && a.edges_ == b.edges_;
  }

 private:
  friend BipartiteGraph build_bipartite(Vertex, Vertex, std::vector<BipartiteEdge>);

  Vertex n1_ = 0;
  Vertex n2_ = 0;
  std::vector<BipartiteEdge> edges_;
  Csr left_;
  Csr right_;
};

/// General sparse graph without self-loops. When a multiplicity vector is
/// present, multiplicity[i] is the number of parallel copies of edges()[i];
/// the edge list itself never repeats a pair.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const SimpleEdge> edges() const { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_.neighbors(v); }
  std::size_t degree(Vertex v) const { return adj_.degree(v); }
  const Csr& adjacency() const { return adj_; }

  bool has_multiplicity() const { return multiplicity_.has_value(); }
  std::span<const std::uint32_t> multiplicity() const {
    return multiplicity_ ? std::span<const std::uint32_t>(*multiplicity_)
                         : std::span<const std::uint32_t>{};
  }
  /// Number of edges counting parallel copies.
  std::uint64_t edge_count_with_multiplicity() const;

  /// Copy with the multiplicity map dropped (each parallel class becomes one edge).
  SimpleGraph simplified() const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.multiplicity_ == b.multiplicity_;
  }

 private:
  friend SimpleGraph build_simple(Vertex, std::vector<SimpleEdge>,
                                  std::optional<std::vector<std::uint32_t>>);

  Vertex n_ = 0;
  std::vector<SimpleEdge> edges_;
  std::optional<std::vector<std::uint32_t>> multiplicity_;
  Csr adj_;
};

/// Validates and builds a bipartite graph. Throws GraphError on an
/// out-of-range endpoint or a duplicate edge.
BipartiteGraph build_bipartite(Vertex n1, Vertex n2, std::vector<BipartiteEdge> edges);

/// Validates and builds a simple graph. Pairs are normalised to u < v.
/// Throws GraphError on self-loops, out-of-range endpoints, duplicates, or a
/// multiplicity vector of the wrong length or containing zeros.
SimpleGraph build_simple(Vertex n, std::vector<SimpleEdge> edges,
                         std::optional<std::vector<std::uint32_t>> multiplicity = std::nullopt);

/// Complete bipartite graph K_{a,b}.
BipartiteGraph complete_bipartite(Vertex a, Vertex b);

// ---------------------------------------------------------------------------
// Connectivity

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  Vertex find(Vertex x);
  /// Returns false when x and y were already joined.
  bool unite(Vertex x, Vertex y);
  std::size_t size_of(Vertex x) { return size_[find(x)]; }

 private:
  std::vector<Vertex> parent_;
  std::vector<Vertex> size_;
};

enum class ComponentClass { tree, unicyclic, complex };

const char* to_string(ComponentClass c);

struct ComponentSummary {
  std::uint32_t id = 0;
  std::uint64_t verts_n1 = 0;  // |C ∩ N1|, or all vertices for a simple graph
  std::uint64_t verts_n2 = 0;  // |C ∩ N2|, zero for a simple graph
  std::uint64_t edge_count = 0;
  std::uint64_t excess = 0;  // edges - vertices + 1
  ComponentClass cls = ComponentClass::tree;
  bool is_small = false;
  bool is_balanced = false;

  std::uint64_t vertex_count() const { return verts_n1 + verts_n2; }
};

/// Component membership over flat vertex indices plus one summary per
/// component. Components are numbered by their smallest flat vertex index.
struct ComponentIndex {
  std::vector<std::uint32_t> component_of;
  std::vector<ComponentSummary> summaries;
};

ComponentIndex component_index(const BipartiteGraph& g);
ComponentIndex component_index(const SimpleGraph& g);

std::vector<ComponentSummary> connected_components(const BipartiteGraph& g);
std::vector<ComponentSummary> connected_components(const SimpleGraph& g);

/// The subgraph induced by the vertices whose component is selected, with
/// vertices renumbered densely in increasing flat order. `original` receives
/// the flat index of each new vertex when non-null.
SimpleGraph induced_on_components(const SimpleGraph& g, const ComponentIndex& index,
                                  const std::vector<bool>& selected,
                                  std::vector<Vertex>* original = nullptr);

// ---------------------------------------------------------------------------
// Text format
//
//   bipartite n1 n2 m        simple n m
//   u w                      u v
//   ...                      ...
//
// Edges are written in canonical sorted order, one per line, '\n' endings.

using AnyGraph = std::variant<BipartiteGraph, SimpleGraph>;

void write_graph(std::ostream& out, const BipartiteGraph& g);
void write_graph(std::ostream& out, const SimpleGraph& g);
std::string to_text(const BipartiteGraph& g);
std::string to_text(const SimpleGraph& g);

/// Parses either header form. Throws GraphError on malformed input.
AnyGraph read_graph(std::istream& in);
AnyGraph read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const AnyGraph& g);

}  // namespace bipgenus
