#include "bipgenus/planarity.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace bipgenus {

namespace {

constexpr int kNone = -1;

struct Interval {
  int low = kNone;
  int high = kNone;
  bool empty() const { return low == kNone && high == kNone; }
};

struct ConflictPair {
  Interval left;
  Interval right;
  void swap() { std::swap(left, right); }
};

class LeftRightTest {
 public:
  explicit LeftRightTest(const SimpleGraph& g) : n_(g.vertex_count()) {
    const auto edges = g.edges();
    const int m = static_cast<int>(edges.size());
    src_.assign(m, kNone);
    dst_.assign(m, kNone);
    incident_.resize(n_);
    for (int e = 0; e < m; ++e) {
      incident_[edges[e].u].push_back(e);
      incident_[edges[e].v].push_back(e);
    }
    end_a_.resize(m);
    end_b_.resize(m);
    for (int e = 0; e < m; ++e) {
      end_a_[e] = static_cast<int>(edges[e].u);
      end_b_[e] = static_cast<int>(edges[e].v);
    }
    height_.assign(n_, kNone);
    parent_edge_.assign(n_, kNone);
    lowpt_.assign(m, 0);
    lowpt2_.assign(m, 0);
    nesting_depth_.assign(m, 0);
    ref_.assign(m, kNone);
    lowpt_edge_.assign(m, kNone);
    stack_bottom_.assign(m, 0);
  }

  bool run() {
    const std::size_t m = src_.size();
    if (n_ > 2 && m > 3 * static_cast<std::size_t>(n_) - 6) return false;

    std::vector<int> roots;
    for (Vertex v = 0; v < n_; ++v) {
      if (height_[v] == kNone) {
        height_[v] = 0;
        roots.push_back(static_cast<int>(v));
        orient(static_cast<int>(v));
      }
    }

    out_.assign(n_, {});
    for (std::size_t e = 0; e < m; ++e) out_[src_[e]].push_back(static_cast<int>(e));
    for (auto& list : out_) {
      std::stable_sort(list.begin(), list.end(),
                       [&](int a, int b) { return nesting_depth_[a] < nesting_depth_[b]; });
    }

    for (int r : roots) {
      if (!test(r)) return false;
    }
    return true;
  }

 private:
  int other_end(int e, int v) const { return end_a_[e] == v ? end_b_[e] : end_a_[e]; }

  // Phase 1: orient edges along a DFS, compute lowpoints and nesting depths.
  void orient(int root) {
    std::vector<int> stack{root};
    if (next_incident_.empty()) next_incident_.assign(n_, 0);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const int e = parent_edge_[v];
      auto& idx = next_incident_[v];
      while (idx < incident_[v].size()) {
        const int vw = incident_[v][idx];
        if (src_[vw] == kNone) {
          const int w = other_end(vw, v);
          src_[vw] = v;
          dst_[vw] = w;
          lowpt_[vw] = height_[v];
          lowpt2_[vw] = height_[v];
          if (height_[w] == kNone) {
            parent_edge_[w] = vw;
            height_[w] = height_[v] + 1;
            stack.push_back(v);
            stack.push_back(w);
            break;  // resume v at this same edge once w is finished
          }
          lowpt_[vw] = height_[w];
        } else if (src_[vw] != v) {
          ++idx;  // oriented from the other end
          continue;
        }
        // Finalise vw (a back edge, or a tree edge whose subtree is done).
        nesting_depth_[vw] = 2 * lowpt_[vw] + (lowpt2_[vw] < height_[v] ? 1 : 0);
        if (e != kNone) {
          if (lowpt_[vw] < lowpt_[e]) {
            lowpt2_[e] = std::min(lowpt_[e], lowpt2_[vw]);
            lowpt_[e] = lowpt_[vw];
          } else if (lowpt_[vw] > lowpt_[e]) {
            lowpt2_[e] = std::min(lowpt2_[e], lowpt_[vw]);
          } else {
            lowpt2_[e] = std::min(lowpt2_[e], lowpt2_[vw]);
          }
        }
        ++idx;
      }
    }
  }

  bool conflicting(const Interval& i, int b) const {
    return !i.empty() && lowpt_[i.high] > lowpt_[b];
  }

  int lowest(const ConflictPair& p) const {
    if (p.left.empty() && p.right.empty()) return kNone;
    if (p.left.empty()) return lowpt_[p.right.low];
    if (p.right.empty()) return lowpt_[p.left.low];
    return std::min(lowpt_[p.left.low], lowpt_[p.right.low]);
  }

  void set_ref(int edge, int value) {
    if (edge != kNone) ref_[edge] = value;
  }

  // Phase 2: test, tracking conflict pairs of return-edge intervals.
  bool test(int root) {
    std::vector<int> stack{root};
    if (next_out_.empty()) next_out_.assign(n_, 0);
    if (descended_.empty()) descended_.assign(src_.size(), false);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const int e = parent_edge_[v];
      bool suspended = false;
      auto& idx = next_out_[v];
      while (idx < out_[v].size()) {
        const int ei = out_[v][idx];
        if (!descended_[ei]) {
          stack_bottom_[ei] = conflicts_.size();
          if (ei == parent_edge_[dst_[ei]]) {
            stack.push_back(v);
            stack.push_back(dst_[ei]);
            descended_[ei] = true;
            suspended = true;
            break;
          }
          lowpt_edge_[ei] = ei;
          conflicts_.push_back({{}, {ei, ei}});
        }
        if (lowpt_[ei] < height_[v]) {
          if (idx == 0) {
            lowpt_edge_[e] = lowpt_edge_[ei];
          } else if (!add_constraints(ei, e)) {
            return false;
          }
        }
        ++idx;
      }
      if (!suspended && e != kNone) remove_back_edges(e);
    }
    return true;
  }

  bool add_constraints(int ei, int e) {
    ConflictPair p;
    // Merge return edges of ei into p.right.
    do {
      ConflictPair q = conflicts_.back();
      conflicts_.pop_back();
      if (!q.left.empty()) q.swap();
      if (!q.left.empty()) return false;
      if (lowpt_[q.right.low] > lowpt_[e]) {
        if (p.right.empty()) {
          p.right = q.right;
        } else {
          set_ref(p.right.low, q.right.high);
        }
        p.right.low = q.right.low;
      } else {
        set_ref(q.right.low, lowpt_edge_[e]);
      }
    } while (conflicts_.size() != stack_bottom_[ei]);

    // Merge conflicting return edges of earlier siblings into p.left.
    while (!conflicts_.empty() &&
           (conflicting(conflicts_.back().left, ei) || conflicting(conflicts_.back().right, ei))) {
      ConflictPair q = conflicts_.back();
      conflicts_.pop_back();
      if (conflicting(q.right, ei)) q.swap();
      if (conflicting(q.right, ei)) return false;
      set_ref(p.right.low, q.right.high);
      if (q.right.low != kNone) p.right.low = q.right.low;
      if (p.left.empty()) {
        p.left = q.left;
      } else {
        set_ref(p.left.low, q.left.high);
      }
      p.left.low = q.left.low;
    }
    if (!(p.left.empty() && p.right.empty())) conflicts_.push_back(p);
    return true;
  }

  void remove_back_edges(int e) {
    const int u = src_[e];
    // Drop whole conflict pairs whose return edges all end at u.
    while (!conflicts_.empty() && lowest(conflicts_.back()) == height_[u]) conflicts_.pop_back();
    if (!conflicts_.empty()) {
      ConflictPair p = conflicts_.back();
      conflicts_.pop_back();
      while (p.left.high != kNone && dst_[p.left.high] == u) p.left.high = ref_[p.left.high];
      if (p.left.high == kNone && p.left.low != kNone) {
        set_ref(p.left.low, p.right.low);
        p.left.low = kNone;
      }
      while (p.right.high != kNone && dst_[p.right.high] == u) p.right.high = ref_[p.right.high];
      if (p.right.high == kNone && p.right.low != kNone) {
        set_ref(p.right.low, p.left.low);
        p.right.low = kNone;
      }
      conflicts_.push_back(p);
    }
    if (lowpt_[e] < height_[u] && !conflicts_.empty()) {
      const int hl = conflicts_.back().left.high;
      const int hr = conflicts_.back().right.high;
      ref_[e] = (hl != kNone && (hr == kNone || lowpt_[hl] > lowpt_[hr])) ? hl : hr;
    }
  }

  Vertex n_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> end_a_, end_b_;
  std::vector<int> src_, dst_;
  std::vector<int> height_, parent_edge_;
  std::vector<int> lowpt_, lowpt2_, nesting_depth_;
  std::vector<std::vector<int>> out_;
  std::vector<std::size_t> next_incident_, next_out_;
  std::vector<bool> descended_;
  std::vector<int> ref_, lowpt_edge_;
  std::vector<std::size_t> stack_bottom_;
  std::vector<ConflictPair> conflicts_;
};

}  // namespace

bool is_planar(const SimpleGraph& g) {
  return LeftRightTest(g).run();
}

bool is_planar(const BipartiteGraph& g) {
  return is_planar(g.flatten());
}

}  // namespace bipgenus
