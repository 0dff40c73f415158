#include "bipgenus/genus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

namespace bipgenus {

namespace {

// Dart d is position d in the CSR target array: tail = owner row, head = targets[d].
struct DartView {
  const Csr& adj;
  std::vector<Vertex> tail;
  std::vector<std::uint64_t> reverse;

  explicit DartView(const Csr& a) : adj(a), tail(a.targets.size()), reverse(a.targets.size()) {
    for (Vertex v = 0; v < adj.vertex_count(); ++v) {
      for (auto d = adj.offsets[v]; d < adj.offsets[v + 1]; ++d) tail[d] = v;
    }
    for (Vertex v = 0; v < adj.vertex_count(); ++v) {
      for (auto d = adj.offsets[v]; d < adj.offsets[v + 1]; ++d) {
        const Vertex w = adj.targets[d];
        auto nb = adj.neighbors(w);
        reverse[d] = adj.offsets[w] + (std::lower_bound(nb.begin(), nb.end(), v) - nb.begin());
      }
    }
  }
  Vertex head(std::uint64_t d) const { return adj.targets[d]; }
};

bool is_bipartite(const Csr& adj) {
  std::vector<int> colour(adj.vertex_count(), -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < adj.vertex_count(); ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      Vertex v = queue.back();
      queue.pop_back();
      for (Vertex w : adj.neighbors(v)) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Enumerates closed non-backtracking dart-distinct walks from their smallest
// dart, accumulating counts per (group of the start vertex, length).
class FaceWalkCounter {
 public:
  FaceWalkCounter(const DartView& darts, const std::vector<std::uint32_t>& group_of,
                  std::size_t groups, int max_length, std::uint64_t work_limit)
      : darts_(darts), group_of_(group_of), max_length_(max_length), work_limit_(work_limit),
        counts_(groups, std::vector<std::uint64_t>(max_length + 1, 0)) {}

  std::vector<std::vector<std::uint64_t>> run() {
    path_.reserve(max_length_);
    for (std::uint64_t d0 = 0; d0 < darts_.tail.size(); ++d0) {
      start_ = d0;
      origin_ = darts_.tail[d0];
      path_.assign(1, d0);
      extend();
    }
    return std::move(counts_);
  }

 private:
  void extend() {
    const std::uint64_t last = path_.back();
    const Vertex at = darts_.head(last);
    const int length = static_cast<int>(path_.size());
    if (at == origin_ && darts_.reverse[last] != start_ && length >= 3) {
      ++counts_[group_of_[origin_]][length];
    }
    if (length == max_length_) return;
    for (auto d = darts_.adj.offsets[at]; d < darts_.adj.offsets[at + 1]; ++d) {
      if (++work_ > work_limit_) {
        throw WorkLimitExceeded("face-walk enumeration exceeded " + std::to_string(work_limit_) +
                                " states");
      }
      if (d <= start_ || d == darts_.reverse[last]) continue;
      if (std::find(path_.begin(), path_.end(), d) != path_.end()) continue;
      path_.push_back(d);
      extend();
      path_.pop_back();
    }
  }

  const DartView& darts_;
  const std::vector<std::uint32_t>& group_of_;
  int max_length_;
  std::uint64_t work_limit_;
  std::uint64_t work_ = 0;
  std::uint64_t start_ = 0;
  Vertex origin_ = 0;
  std::vector<std::uint64_t> path_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

// Subgraph induced by a vertex mask, renumbered in increasing order.
SimpleGraph induced_on_mask(const SimpleGraph& g, const std::vector<bool>& keep,
                            std::vector<Vertex>& original) {
  constexpr auto unset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> renumber(g.vertex_count(), unset);
  original.clear();
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (keep[v]) {
      renumber[v] = static_cast<Vertex>(original.size());
      original.push_back(v);
    }
  }
  std::vector<SimpleEdge> edges;
  for (const auto& e : g.edges()) {
    if (renumber[e.u] != unset && renumber[e.v] != unset) {
      edges.push_back({renumber[e.u], renumber[e.v]});
    }
  }
  return build_simple(static_cast<Vertex>(original.size()), std::move(edges));
}

// Everything the face bound needs, computed once per graph.
struct ComplexCores {
  bool bipartite = true;
  std::uint64_t acyclic = 0;
  std::uint64_t unicyclic = 0;
  std::vector<std::uint64_t> excess;      // per complex component
  std::vector<std::uint64_t> core_edges;  // per complex component
  SimpleGraph core;                       // union of the complex components' 2-cores
  std::vector<std::uint32_t> group_of;    // core vertex -> complex component
};

ComplexCores complex_cores(const SimpleGraph& input) {
  const SimpleGraph g = input.has_multiplicity() ? input.simplified() : input;
  ComplexCores out;
  out.bipartite = is_bipartite(g.adjacency());
  const auto index = component_index(g);
  std::vector<std::int64_t> local(index.summaries.size(), -1);
  for (const auto& s : index.summaries) {
    if (s.cls == ComponentClass::tree) {
      ++out.acyclic;
    } else if (s.cls == ComponentClass::unicyclic) {
      ++out.unicyclic;
    } else {
      local[s.id] = static_cast<std::int64_t>(out.excess.size());
      out.excess.push_back(s.excess);
    }
  }
  auto keep = two_core_mask(g.adjacency());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (local[index.component_of[v]] < 0) keep[v] = false;
  }
  std::vector<Vertex> original;
  out.core = induced_on_mask(g, keep, original);
  out.group_of.resize(original.size());
  for (std::size_t i = 0; i < original.size(); ++i) {
    out.group_of[i] = static_cast<std::uint32_t>(local[index.component_of[original[i]]]);
  }
  out.core_edges.assign(out.excess.size(), 0);
  for (const auto& e : out.core.edges()) ++out.core_edges[out.group_of[e.u]];
  return out;
}

int shortest_face(bool bipartite) { return bipartite ? 4 : 3; }

// girth[c][L]: darts of complex component c whose shortest closed
// non-backtracking walk has L darts (the last slot collects everything beyond
// the search depth). The face through a dart is such a walk, so it is at
// least that long.
using GirthHistogram = std::vector<std::vector<std::uint64_t>>;

inline constexpr int kGirthDepth = 64;
// Each dart needs its own breadth-first search, so this pass gets a larger
// share of the work budget than walk counting.
inline constexpr std::uint64_t kGirthWorkFactor = 16;

std::optional<GirthHistogram> dart_girths(const DartView& darts, const std::vector<std::uint32_t>& group_of,
                                          std::size_t groups, std::uint64_t work_limit) {
  const auto& adj = darts.adj;
  const std::size_t total = adj.targets.size();
  GirthHistogram hist(groups, std::vector<std::uint64_t>(kGirthDepth + 2, 0));
  std::vector<std::uint32_t> seen(total, 0);
  std::vector<std::uint64_t> queue;
  std::uint64_t work = 0;
  for (std::uint64_t d = 0; d < total; ++d) {
    const auto stamp = static_cast<std::uint32_t>(d + 1);
    const Vertex origin = darts.tail[d];
    queue.assign(1, d);
    seen[d] = stamp;
    int found = kGirthDepth + 1;
    std::size_t head = 0;
    for (int len = 1; len <= kGirthDepth && found > kGirthDepth && head < queue.size(); ++len) {
      const std::size_t level_end = queue.size();
      for (; head < level_end && found > kGirthDepth; ++head) {
        const std::uint64_t cur = queue[head];
        const Vertex at = darts.head(cur);
        for (auto e = adj.offsets[at]; e < adj.offsets[at + 1]; ++e) {
          if (++work > work_limit) return std::nullopt;
          if (e == darts.reverse[cur]) continue;
          if (darts.head(e) == origin && e != darts.reverse[d]) {
            found = len + 1;
            break;
          }
          if (seen[e] != stamp) {
            seen[e] = stamp;
            queue.push_back(e);
          }
        }
      }
    }
    ++hist[group_of[origin]][std::min(found, kGirthDepth + 1)];
  }
  return hist;
}

// Upper bound on the faces of one component: assign its 2e darts to faces,
// shortest lengths first. Faces of length L <= max_short are capped by the
// walk counts, and darts in faces of length <= L must have girth <= L.
// Shortest-first is optimal for this relaxation, so the result is an upper
// bound on the face count.
std::uint64_t pack_faces(std::uint64_t core_edges, const std::vector<std::uint64_t>* walks,
                         int max_short, bool bipartite, const std::vector<std::uint64_t>* girth) {
  const double budget = 2.0 * static_cast<double>(core_edges);
  double used = 0.0;
  double faces = 0.0;
  double girth_prefix = 0.0;
  for (int len = 3; used < budget - 1e-9; ++len) {
    if (girth && len < static_cast<int>(girth->size())) girth_prefix += static_cast<double>((*girth)[len]);
    if (bipartite && len % 2 == 1) continue;
    double take = (budget - used) / len;
    if (walks && len <= max_short) take = std::min(take, static_cast<double>((*walks)[len]));
    if (girth && len <= kGirthDepth) take = std::min(take, std::max(0.0, girth_prefix - used) / len);
    faces += take;
    used += take * len;
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(faces + 1e-9)));
}

struct FaceBounds {
  // per_j[i][c]: face bound of complex component c at j_range[i]; empty if
  // walk counting hit the work limit for that j.
  std::vector<std::optional<std::vector<std::uint64_t>>> per_j;
  std::vector<std::uint64_t> fallback;  // without walk counts, per component
};

FaceBounds face_bounds(const ComplexCores& cores, const std::vector<int>& j_range,
                       std::uint64_t work_limit, bool throw_on_limit) {
  FaceBounds out;
  const std::size_t groups = cores.excess.size();
  out.per_j.resize(j_range.size());
  if (groups == 0) {
    for (auto& slot : out.per_j) slot.emplace();
    return out;
  }
  const DartView darts(cores.core.adjacency());
  // Girth information only tightens the bound, so running out of budget here is not an error.
  const auto girth = dart_girths(darts, cores.group_of, groups,
                                 work_limit > UINT64_MAX / kGirthWorkFactor ? UINT64_MAX
                                                                           : work_limit * kGirthWorkFactor);
  auto girth_of = [&](std::size_t c) { return girth ? &(*girth)[c] : nullptr; };
  for (std::size_t c = 0; c < groups; ++c) {
    out.fallback.push_back(pack_faces(cores.core_edges[c], nullptr, 0, cores.bipartite, girth_of(c)));
  }

  // Count once at the largest feasible length; smaller j reuse the counts.
  std::vector<int> order(j_range.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return j_range[a] > j_range[b]; });
  std::optional<std::vector<std::vector<std::uint64_t>>> walks;
  int counted_length = 0;
  for (int i : order) {
    const int max_short = 2 * j_range[i];
    if (!walks || counted_length < max_short) {
      try {
        walks = FaceWalkCounter(darts, cores.group_of, groups, max_short, work_limit).run();
        counted_length = max_short;
      } catch (const WorkLimitExceeded&) {
        if (throw_on_limit) throw;
        walks.reset();
        continue;
      }
    }
    std::vector<std::uint64_t> bounds(groups);
    for (std::size_t c = 0; c < groups; ++c) {
      bounds[c] = pack_faces(cores.core_edges[c], &(*walks)[c], max_short, cores.bipartite, girth_of(c));
    }
    out.per_j[i] = std::move(bounds);
  }
  return out;
}

std::uint64_t face_upper_bound_impl(const SimpleGraph& g, int j, std::uint64_t work_limit) {
  if (j < 2) throw std::invalid_argument("face bound needs j >= 2");
  const auto cores = complex_cores(g);
  const auto bounds = face_bounds(cores, {j}, work_limit, /*throw_on_limit=*/true);
  const auto& per = *bounds.per_j[0];
  return cores.acyclic + 2 * cores.unicyclic + std::accumulate(per.begin(), per.end(), std::uint64_t{0});
}

GenusInterval genus_interval_impl(const SimpleGraph& g, const std::vector<int>& j_range,
                                  std::uint64_t work_limit) {
  for (int j : j_range) {
    if (j < 2) throw std::invalid_argument("j_range entries must be >= 2");
  }
  const auto cores = complex_cores(g);
  const auto bounds = face_bounds(cores, j_range, work_limit, /*throw_on_limit=*/false);
  const std::uint64_t fixed = cores.acyclic + 2 * cores.unicyclic;

  const std::vector<std::uint64_t>* best = &bounds.fallback;
  std::uint64_t best_total = fixed + std::accumulate(best->begin(), best->end(), std::uint64_t{0});
  int best_j = 0;
  for (std::size_t i = 0; i < j_range.size(); ++i) {
    if (!bounds.per_j[i]) continue;
    const auto& per = *bounds.per_j[i];
    const auto total = fixed + std::accumulate(per.begin(), per.end(), std::uint64_t{0});
    if (best_j == 0 || total < best_total || (total == best_total && j_range[i] < best_j)) {
      best = &per;
      best_total = total;
      best_j = j_range[i];
    }
  }

  GenusInterval out;
  out.face_upper_bound = best_total;
  out.j_star = best_j;
  double excess_sum = 0.0;
  for (std::size_t c = 0; c < cores.excess.size(); ++c) {
    const std::uint64_t x = cores.excess[c];
    const std::uint64_t f = (*best)[c];
    out.upper += x / 2;
    if (x + 1 > f) out.lower += (x + 1 - f + 1) / 2;
    excess_sum += static_cast<double>(x);
  }
  // Unicyclic components add excess 1 each but genus 0.
  out.point_estimate = (excess_sum + static_cast<double>(cores.unicyclic)) / 2.0;
  return out;
}

}  // namespace

std::map<int, std::uint64_t> count_face_walks(const SimpleGraph& g, int max_length,
                                              std::uint64_t work_limit) {
  std::map<int, std::uint64_t> out;
  if (max_length < 3) return out;
  const SimpleGraph s = g.has_multiplicity() ? g.simplified() : g;
  const DartView darts(s.adjacency());
  const std::vector<std::uint32_t> group(s.vertex_count(), 0);
  auto counts = FaceWalkCounter(darts, group, 1, max_length, work_limit).run();
  for (int len = 3; len <= max_length; ++len) out[len] = counts[0][len];
  return out;
}

std::uint64_t face_upper_bound(const BipartiteGraph& g, int j, std::uint64_t work_limit) {
  return face_upper_bound_impl(g.flatten(), j, work_limit);
}

std::uint64_t face_upper_bound(const SimpleGraph& g, int j, std::uint64_t work_limit) {
  return face_upper_bound_impl(g, j, work_limit);
}

GenusInterval genus_interval(const BipartiteGraph& g, const std::vector<int>& j_range,
                             std::uint64_t work_limit) {
  return genus_interval_impl(g.flatten(), j_range, work_limit);
}

GenusInterval genus_interval(const SimpleGraph& g, const std::vector<int>& j_range,
                             std::uint64_t work_limit) {
  return genus_interval_impl(g, j_range, work_limit);
}

std::uint64_t genus_upper_bound(const SimpleGraph& g) {
  const SimpleGraph s = g.has_multiplicity() ? g.simplified() : g;
  std::uint64_t upper = 0;
  for (const auto& c : connected_components(s)) upper += c.excess / 2;
  return upper;
}

std::uint64_t genus_upper_bound(const BipartiteGraph& g) {
  std::uint64_t upper = 0;
  for (const auto& c : connected_components(g)) upper += c.excess / 2;
  return upper;
}

// ---------------------------------------------------------------------------
// Exhaustive rotation-system search

namespace {

class RotationSearch {
 public:
  RotationSearch(const SimpleGraph& g, ExactGenusStats* stats)
      : g_(g), darts_(g.adjacency()), stats_(stats) {
    const auto& adj = g_.adjacency();
    const std::size_t n = adj.vertex_count();
    succ_.resize(adj.targets.size());
    order_.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      order_[v].resize(adj.degree(v));
      std::iota(order_[v].begin(), order_[v].end(), 0u);
      if (adj.degree(v) >= 3) free_.push_back(v);
      apply(v);
    }
    seen_.assign(adj.targets.size(), 0);
  }

  std::uint64_t run() {
    const auto& adj = g_.adjacency();
    const std::int64_t v = adj.vertex_count();
    const std::int64_t e = g_.edge_count();
    const std::int64_t min_face = shortest_face(is_bipartite(adj));
    const std::int64_t face_cap = 2 * e / min_face;
    const std::int64_t floor_genus = std::max<std::int64_t>(0, (e - v + 2 - face_cap + 1) / 2);

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (;;) {
      const std::int64_t f = trace_faces();
      if (stats_) {
        ++stats_->systems_examined;
        const std::int64_t chi = v - e + f;
        if (chi % 2 != 0 || chi > 2) ++stats_->euler_violations;
      }
      best = std::min(best, (2 - v + e - f) / 2);
      if (best <= floor_genus || !advance()) break;
    }
    return static_cast<std::uint64_t>(best);
  }

 private:
  // Rotation at v: neighbour slots in the cyclic order order_[v].
  void apply(Vertex v) {
    const auto base = g_.adjacency().offsets[v];
    const auto& ord = order_[v];
    for (std::size_t i = 0; i < ord.size(); ++i) {
      succ_[base + ord[i]] = base + ord[(i + 1) % ord.size()];
    }
  }

  // Odometer over vertices; slot 0 stays first so each cyclic order appears once.
  bool advance() {
    for (Vertex v : free_) {
      auto& ord = order_[v];
      const bool more = std::next_permutation(ord.begin() + 1, ord.end());
      apply(v);
      if (more) return true;
    }
    return false;
  }

  std::int64_t trace_faces() {
    ++stamp_;
    std::int64_t faces = 0;
    for (std::uint64_t d0 = 0; d0 < succ_.size(); ++d0) {
      if (seen_[d0] == stamp_) continue;
      ++faces;
      for (auto d = d0; seen_[d] != stamp_; d = succ_[darts_.reverse[d]]) seen_[d] = stamp_;
    }
    return faces;
  }

  const SimpleGraph& g_;
  DartView darts_;
  ExactGenusStats* stats_;
  std::vector<std::uint64_t> succ_;
  std::vector<std::vector<std::uint32_t>> order_;
  std::vector<Vertex> free_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

std::uint64_t rotation_systems(const SimpleGraph& g, std::uint64_t ceiling) {
  std::uint64_t total = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (std::uint64_t k = 2; k + 1 <= g.degree(v); ++k) {
      if (total > ceiling / k) return ceiling + 1;
      total *= k;
    }
  }
  return total;
}

}  // namespace

std::uint64_t exact_genus_small(const SimpleGraph& input, std::uint64_t ceiling,
                                ExactGenusStats* stats) {
  const SimpleGraph g = input.has_multiplicity() ? input.simplified() : input;
  const auto index = component_index(g);
  const auto core = two_core_mask(g.adjacency());
  std::uint64_t genus = 0;
  for (const auto& c : index.summaries) {
    if (c.cls != ComponentClass::complex) continue;
    std::vector<bool> keep(g.vertex_count(), false);
    for (Vertex v = 0; v < g.vertex_count(); ++v) keep[v] = core[v] && index.component_of[v] == c.id;
    std::vector<Vertex> original;
    const SimpleGraph sub = induced_on_mask(g, keep, original);
    if (rotation_systems(sub, ceiling) > ceiling) {
      throw GenusSearchLimit("component " + std::to_string(c.id) + " has more than " +
                             std::to_string(ceiling) + " rotation systems");
    }
    genus += RotationSearch(sub, stats).run();
  }
  return genus;
}

std::uint64_t exact_genus_small(const BipartiteGraph& g, std::uint64_t ceiling,
                                ExactGenusStats* stats) {
  return exact_genus_small(g.flatten(), ceiling, stats);
}

}  // namespace bipgenus
