#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "bipgenus/graph.hpp"
#include "bipgenus/structure.hpp"

namespace bipgenus {

/// Certified bounds on the orientable genus of one graph.
struct GenusInterval {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  /// (e - v + kappa) / 2: Euler's formula with one face per component.
  double point_estimate = 0.0;
  /// Face-count bound at j_star, summed over components.
  std::uint64_t face_upper_bound = 0;
  int j_star = 0;
};

inline const std::vector<int> kDefaultJRange{2, 3, 4, 5};

/// Upper bound on the number of faces of any cellular embedding, summed over
/// components: one face per tree, two per unicyclic component, and for each
/// complex component the optimum of a dart-budget packing over its 2-core in
/// which faces of length L <= 2j are limited by the number of closed
/// non-backtracking walks of length L (for L <= 6 in a bipartite graph these
/// are exactly two per cycle) and all longer faces use at least 2j+1 darts
/// (2j+2 when bipartite). Throws WorkLimitExceeded if walk counting
/// exceeds `work_limit` states.
std::uint64_t face_upper_bound(const BipartiteGraph& g, int j,
                               std::uint64_t work_limit = kDefaultCycleWorkLimit);
std::uint64_t face_upper_bound(const SimpleGraph& g, int j,
                               std::uint64_t work_limit = kDefaultCycleWorkLimit);

/// lower = sum over complex components of max(0, ceil((excess + 1 - f_C) / 2))
/// with f_C the component's face bound at the j in `j_range` that minimises
/// the total; upper = sum over components of floor(excess / 2). A j whose walk
/// enumeration hits the work limit is skipped; if every j does, complex
/// components fall back to the plain dart bound 2e / (shortest face length).
GenusInterval genus_interval(const BipartiteGraph& g, const std::vector<int>& j_range = kDefaultJRange,
                             std::uint64_t work_limit = kDefaultCycleWorkLimit);
GenusInterval genus_interval(const SimpleGraph& g, const std::vector<int>& j_range = kDefaultJRange,
                             std::uint64_t work_limit = kDefaultCycleWorkLimit);

/// Sum over components of floor(excess / 2); parallel copies are ignored.
std::uint64_t genus_upper_bound(const SimpleGraph& g);
std::uint64_t genus_upper_bound(const BipartiteGraph& g);

/// Closed non-backtracking walks with pairwise distinct darts, counted once
/// per cyclic sequence, for each length 3..max_length. Every face of length
/// L of a cellular embedding of a graph with minimum degree >= 2 is such a
/// walk.
std::map<int, std::uint64_t> count_face_walks(const SimpleGraph& g, int max_length,
                                              std::uint64_t work_limit = kDefaultCycleWorkLimit);

class GenusSearchLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultRotationCeiling = 10'000'000;

struct ExactGenusStats {
  std::uint64_t systems_examined = 0;
  /// Rotation systems whose traced faces gave v - e + f odd or above 2.
  std::uint64_t euler_violations = 0;
};

/// Orientable genus by exhaustive search over rotation systems, per
/// component after stripping vertices of degree <= 1. Throws
/// GenusSearchLimit when some component has more than `ceiling` systems
/// (product over vertices of (deg - 1)!).
std::uint64_t exact_genus_small(const SimpleGraph& g, std::uint64_t ceiling = kDefaultRotationCeiling,
                                ExactGenusStats* stats = nullptr);
std::uint64_t exact_genus_small(const BipartiteGraph& g, std::uint64_t ceiling = kDefaultRotationCeiling,
                                ExactGenusStats* stats = nullptr);

}  // namespace bipgenus
