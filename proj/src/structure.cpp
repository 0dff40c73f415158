#include "bipgenus/structure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bipgenus {

void ClassifierThresholds::validate() const {
  if (!(beta0 > 0.0) || !(beta1 > 0.0) || !(balance_factor > 0.0)) {
    throw std::invalid_argument("classifier thresholds must be strictly positive");
  }
}

double small_threshold(std::uint64_t n1, const ClassifierThresholds& th) {
  const double l = std::log(static_cast<double>(n1));
  return th.beta0 * l * l;
}

double giant_threshold(std::uint64_t n1, const ClassifierThresholds& th) {
  const double n = static_cast<double>(n1);
  return th.beta1 * std::sqrt(n * std::log(n));
}

std::uint64_t count_s_paths(const BipartiteGraph& g) {
  std::uint64_t s = 0;
  for (Vertex w = 0; w < g.n2(); ++w) {
    const std::uint64_t d = g.degree_n2(w);
    s += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return s;
}

Classification classify_components(const BipartiteGraph& g, double p,
                                   const ClassifierThresholds& th) {
  th.validate();
  if (g.n1() < 2) throw std::invalid_argument("classification needs n1 >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");

  Classification out;
  out.components = connected_components(g);
  const double small = small_threshold(g.n1(), th);
  const double balance = th.balance_factor * p * static_cast<double>(g.n2());

  StructureReport& r = out.report;
  r.edge_count = g.edge_count();
  r.vertex_count = g.vertex_count();
  r.s_paths = count_s_paths(g);
  r.kappa = out.components.size();

  for (auto& c : out.components) {
    c.is_small = static_cast<double>(c.verts_n1) <= small;
    c.is_balanced = c.verts_n1 == 0 ||
                    static_cast<double>(c.verts_n2) <= balance * static_cast<double>(c.verts_n1);
    switch (c.cls) {
      case ComponentClass::tree: ++r.kappa_tree; break;
      case ComponentClass::unicyclic: ++r.kappa_unicyclic; break;
      case ComponentClass::complex: ++r.kappa_complex; break;
    }
    if (c.vertex_count() == 1) ++r.kappa_isolated;
    if (c.is_small && c.is_balanced) {
      switch (c.cls) {
        case ComponentClass::tree: ++r.kappa_small_balanced_tree; break;
        case ComponentClass::unicyclic: ++r.kappa_small_balanced_unicyclic; break;
        case ComponentClass::complex: ++r.kappa_small_balanced_complex; break;
      }
    }
    if (c.verts_n1 > r.largest_n1_intersection) {
      r.second_largest_n1_intersection = r.largest_n1_intersection;
      r.largest_n1_intersection = c.verts_n1;
    } else if (c.verts_n1 > r.second_largest_n1_intersection) {
      r.second_largest_n1_intersection = c.verts_n1;
    }
  }
  return out;
}

std::vector<bool> two_core_mask(const Csr& adj) {
  const std::size_t n = adj.vertex_count();
  std::vector<std::size_t> deg(n);
  std::vector<bool> alive(n, true);
  std::vector<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = adj.degree(v);
    if (deg[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    Vertex v = queue.back();
    queue.pop_back();
    if (!alive[v]) continue;
    alive[v] = false;
    for (Vertex w : adj.neighbors(v)) {
      if (alive[w] && --deg[w] == 1) queue.push_back(w);
    }
  }
  return alive;
}

namespace {

// Counts every cycle twice (once per direction) from its smallest vertex.
class CycleCounter {
 public:
  CycleCounter(const Csr& adj, const std::vector<bool>& core, int max_length,
               std::uint64_t work_limit)
      : adj_(adj), core_(core), max_length_(max_length), work_limit_(work_limit),
        on_path_(adj.vertex_count(), false), twice_(max_length + 1, 0) {}

  std::map<int, std::uint64_t> run() {
    for (Vertex r = 0; r < adj_.vertex_count(); ++r) {
      if (!core_[r]) continue;
      root_ = r;
      on_path_[r] = true;
      extend(r, 1);
      on_path_[r] = false;
    }
    std::map<int, std::uint64_t> out;
    for (int len = 3; len <= max_length_; ++len) out[len] = twice_[len] / 2;
    return out;
  }

 private:
  void extend(Vertex v, int length) {
    for (Vertex w : adj_.neighbors(v)) {
      if (++work_ > work_limit_) {
        throw WorkLimitExceeded("cycle enumeration exceeded " + std::to_string(work_limit_) +
                                " states");
      }
      if (w == root_) {
        if (length >= 3) ++twice_[length];
        continue;
      }
      if (w < root_ || !core_[w] || on_path_[w] || length == max_length_) continue;
      on_path_[w] = true;
      extend(w, length + 1);
      on_path_[w] = false;
    }
  }

  const Csr& adj_;
  const std::vector<bool>& core_;
  int max_length_;
  std::uint64_t work_limit_;
  std::uint64_t work_ = 0;
  Vertex root_ = 0;
  std::vector<bool> on_path_;
  std::vector<std::uint64_t> twice_;
};

}  // namespace

std::map<int, std::uint64_t> count_cycles_up_to(const SimpleGraph& g, int max_length,
                                                std::uint64_t work_limit) {
  if (max_length < 3) return {};
  const auto core = two_core_mask(g.adjacency());
  return CycleCounter(g.adjacency(), core, max_length, work_limit).run();
}

std::map<int, std::uint64_t> count_short_cycles(const BipartiteGraph& g, int j,
                                                std::uint64_t work_limit) {
  if (j < 2) throw std::invalid_argument("cycle half-length bound j must be >= 2");
  auto all = count_cycles_up_to(g.flatten(), 2 * j, work_limit);
  std::map<int, std::uint64_t> even;
  for (int k = 2; k <= j; ++k) even[2 * k] = all[2 * k];
  return even;
}

GapCheck johansson_gap_check(const std::vector<ComponentSummary>& summaries, std::uint64_t n1,
                             const ClassifierThresholds& th) {
  th.validate();
  GapCheck out;
  const double lo = small_threshold(n1, th);
  const double hi = giant_threshold(n1, th);
  for (const auto& c : summaries) {
    const double k = static_cast<double>(c.verts_n1);
    if (k > hi) ++out.giant_count;
    // Components meeting N1 in at most one vertex never count as gap witnesses.
    if (c.verts_n1 >= 2 && k >= lo && k <= hi) out.offending_sizes.push_back(c.verts_n1);
  }
  std::sort(out.offending_sizes.begin(), out.offending_sizes.end());
  out.ok = out.giant_count <= 1 && out.offending_sizes.empty();
  return out;
}

}  // namespace bipgenus
