#include "bipgenus/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace bipgenus {

namespace {

// Builds a CSR over `n` vertices from (source, target) pairs; neighbour lists
// come out sorted when the pairs are fed in sorted order per source.
template <typename PairRange, typename Src, typename Dst>
Csr make_csr(std::size_t n, const PairRange& pairs, Src src, Dst dst) {
  Csr csr;
  csr.offsets.assign(n + 1, 0);
  for (const auto& e : pairs) ++csr.offsets[src(e) + 1];
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());
  csr.targets.resize(csr.offsets.back());
  std::vector<std::uint64_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const auto& e : pairs) csr.targets[cursor[src(e)]++] = dst(e);
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(csr.targets.begin() + csr.offsets[v], csr.targets.begin() + csr.offsets[v + 1]);
  }
  return csr;
}

std::string edge_text(std::uint64_t a, std::uint64_t b) {
  return std::to_string(a) + " " + std::to_string(b);
}

}  // namespace

BipartiteGraph build_bipartite(Vertex n1, Vertex n2, std::vector<BipartiteEdge> edges) {
  if (std::uint64_t{n1} + n2 > std::numeric_limits<Vertex>::max()) {
    throw GraphError("vertex count exceeds the 32-bit index range");
  }
  for (const auto& e : edges) {
    if (e.left >= n1 || e.right >= n2) {
      throw GraphError("edge endpoint out of range: " + edge_text(e.left, e.right));
    }
  }
  if (!std::is_sorted(edges.begin(), edges.end())) std::sort(edges.begin(), edges.end());
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
    throw GraphError("duplicate edge: " + edge_text(it->left, it->right));
  }

  BipartiteGraph g;
  g.n1_ = n1;
  g.n2_ = n2;
  g.edges_ = std::move(edges);
  g.left_ = make_csr(n1, g.edges_, [](const BipartiteEdge& e) { return e.left; },
                     [](const BipartiteEdge& e) { return e.right; });
  g.right_ = make_csr(n2, g.edges_, [](const BipartiteEdge& e) { return e.right; },
                      [](const BipartiteEdge& e) { return e.left; });
  return g;
}

SimpleGraph build_simple(Vertex n, std::vector<SimpleEdge> edges,
                         std::optional<std::vector<std::uint32_t>> multiplicity) {
  for (auto& e : edges) {
    if (e.u == e.v) throw GraphError("self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) throw GraphError("edge endpoint out of range: " + edge_text(e.u, e.v));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  if (multiplicity) {
    if (multiplicity->size() != edges.size()) {
      throw GraphError("multiplicity map length does not match the edge list");
    }
    if (std::find(multiplicity->begin(), multiplicity->end(), 0u) != multiplicity->end()) {
      throw GraphError("zero multiplicity");
    }
    if (!std::is_sorted(edges.begin(), edges.end())) {
      std::vector<std::size_t> order(edges.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
      std::vector<SimpleEdge> e2;
      std::vector<std::uint32_t> m2;
      e2.reserve(edges.size());
      m2.reserve(edges.size());
      for (auto i : order) {
        e2.push_back(edges[i]);
        m2.push_back((*multiplicity)[i]);
      }
      edges = std::move(e2);
      *multiplicity = std::move(m2);
    }
  } else if (!std::is_sorted(edges.begin(), edges.end())) {
    std::sort(edges.begin(), edges.end());
  }
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
    throw GraphError("duplicate edge: " + edge_text(it->u, it->v));
  }

  SimpleGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.multiplicity_ = std::move(multiplicity);

  std::vector<SimpleEdge> both;
  both.reserve(2 * g.edges_.size());
  for (const auto& e : g.edges_) {
    both.push_back(e);
    both.push_back({e.v, e.u});
  }
  g.adj_ = make_csr(n, both, [](const SimpleEdge& e) { return e.u; },
                    [](const SimpleEdge& e) { return e.v; });
  return g;
}

std::uint64_t SimpleGraph::edge_count_with_multiplicity() const {
  if (!multiplicity_) return edges_.size();
  return std::accumulate(multiplicity_->begin(), multiplicity_->end(), std::uint64_t{0});
}

SimpleGraph SimpleGraph::simplified() const {
  SimpleGraph copy = *this;
  copy.multiplicity_.reset();
  return copy;
}

SimpleGraph BipartiteGraph::flatten() const {
  std::vector<SimpleEdge> flat;
  flat.reserve(edges_.size());
  for (const auto& e : edges_) flat.push_back({e.left, flat_n2(e.right)});
  return build_simple(static_cast<Vertex>(vertex_count()), std::move(flat));
}

BipartiteGraph complete_bipartite(Vertex a, Vertex b) {
  std::vector<BipartiteEdge> edges;
  edges.reserve(std::size_t{a} * b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex w = 0; w < b; ++w) edges.push_back({u, w});
  return build_bipartite(a, b, std::move(edges));
}

// ---------------------------------------------------------------------------

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
}

Vertex UnionFind::find(Vertex x) {
  Vertex root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    Vertex next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(Vertex x, Vertex y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::tree: return "tree";
    case ComponentClass::unicyclic: return "unicyclic";
    case ComponentClass::complex: return "complex";
  }
  return "?";
}

namespace {

// Shared by both graph kinds: `n1` flat vertices count toward verts_n1, the
// rest toward verts_n2; `first_of` maps an edge to one of its endpoints.
template <typename EdgeRange, typename EdgeEnds>
ComponentIndex index_components(std::size_t n, std::size_t n1, const EdgeRange& edges,
                                EdgeEnds ends) {
  UnionFind uf(n);
  for (const auto& e : edges) {
    auto [a, b] = ends(e);
    uf.unite(a, b);
  }
  ComponentIndex index;
  index.component_of.assign(n, 0);
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> id_of_root(n, unset);
  for (std::size_t v = 0; v < n; ++v) {
    Vertex root = uf.find(static_cast<Vertex>(v));
    if (id_of_root[root] == unset) {
      id_of_root[root] = static_cast<std::uint32_t>(index.summaries.size());
      ComponentSummary s;
      s.id = id_of_root[root];
      index.summaries.push_back(s);
    }
    auto id = id_of_root[root];
    index.component_of[v] = id;
    if (v < n1) ++index.summaries[id].verts_n1; else ++index.summaries[id].verts_n2;
  }
  for (const auto& e : edges) {
    auto [a, b] = ends(e);
    ++index.summaries[index.component_of[a]].edge_count;
  }
  for (auto& s : index.summaries) {
    s.excess = s.edge_count + 1 - s.vertex_count();
    s.cls = s.excess == 0 ? ComponentClass::tree
          : s.excess == 1 ? ComponentClass::unicyclic
                          : ComponentClass::complex;
  }
  return index;
}

}  // namespace

ComponentIndex component_index(const BipartiteGraph& g) {
  const Vertex n1 = g.n1();
  return index_components(g.vertex_count(), n1, g.edges(), [n1](const BipartiteEdge& e) {
    return std::pair<Vertex, Vertex>{e.left, n1 + e.right};
  });
}

ComponentIndex component_index(const SimpleGraph& g) {
  // Parallel copies do not change connectivity but do change the excess.
  ComponentIndex index = index_components(g.vertex_count(), g.vertex_count(), g.edges(),
                                          [](const SimpleEdge& e) {
                                            return std::pair<Vertex, Vertex>{e.u, e.v};
                                          });
  if (g.has_multiplicity()) {
    auto mult = g.multiplicity();
    auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto& s = index.summaries[index.component_of[edges[i].u]];
      s.edge_count += mult[i] - 1;
    }
    for (auto& s : index.summaries) {
      s.excess = s.edge_count + 1 - s.vertex_count();
      s.cls = s.excess == 0 ? ComponentClass::tree
            : s.excess == 1 ? ComponentClass::unicyclic
                            : ComponentClass::complex;
    }
  }
  return index;
}

std::vector<ComponentSummary> connected_components(const BipartiteGraph& g) {
  return component_index(g).summaries;
}

std::vector<ComponentSummary> connected_components(const SimpleGraph& g) {
  return component_index(g).summaries;
}

SimpleGraph induced_on_components(const SimpleGraph& g, const ComponentIndex& index,
                                  const std::vector<bool>& selected,
                                  std::vector<Vertex>* original) {
  constexpr auto unset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> renumber(g.vertex_count(), unset);
  Vertex next = 0;
  if (original) original->clear();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (selected[index.component_of[v]]) {
      renumber[v] = next++;
      if (original) original->push_back(v);
    }
  }
  std::vector<SimpleEdge> edges;
  for (const auto& e : g.edges()) {
    if (renumber[e.u] != unset) edges.push_back({renumber[e.u], renumber[e.v]});
  }
  return build_simple(next, std::move(edges));
}

// ---------------------------------------------------------------------------

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << "bipartite " << g.n1() << ' ' << g.n2() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.left << ' ' << e.right << '\n';
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  out << "simple " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string to_text(const BipartiteGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

std::string to_text(const SimpleGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

namespace {

std::uint64_t parse_count(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw GraphError(std::string("missing ") + what);
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw GraphError(std::string("malformed ") + what + ": '" + token + "'");
  }
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw GraphError(std::string("malformed ") + what + ": '" + token + "'");
  }
}

Vertex parse_vertex(std::istream& in, const char* what) {
  auto x = parse_count(in, what);
  if (x > std::numeric_limits<Vertex>::max()) throw GraphError(std::string(what) + " too large");
  return static_cast<Vertex>(x);
}

}  // namespace

AnyGraph read_graph(std::istream& in) {
  std::string kind;
  if (!(in >> kind)) throw GraphError("empty graph file");
  if (kind == "bipartite") {
    Vertex n1 = parse_vertex(in, "n1");
    Vertex n2 = parse_vertex(in, "n2");
    auto m = parse_count(in, "edge count");
    std::vector<BipartiteEdge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
      Vertex u = parse_vertex(in, "edge endpoint");
      Vertex w = parse_vertex(in, "edge endpoint");
      edges.push_back({u, w});
    }
    return build_bipartite(n1, n2, std::move(edges));
  }
  if (kind == "simple") {
    Vertex n = parse_vertex(in, "n");
    auto m = parse_count(in, "edge count");
    std::vector<SimpleEdge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
      Vertex u = parse_vertex(in, "edge endpoint");
      Vertex v = parse_vertex(in, "edge endpoint");
      edges.push_back({u, v});
    }
    return build_simple(n, std::move(edges));
  }
  throw GraphError("unknown graph header '" + kind + "'");
}

AnyGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open " + path);
  return read_graph(in);
}

void write_graph_file(const std::string& path, const AnyGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write " + path);
  std::visit([&](const auto& graph) { write_graph(out, graph); }, g);
}

}  // namespace bipgenus
