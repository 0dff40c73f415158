#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "bipgenus/graph.hpp"

namespace bipgenus {

/// Thrown when an enumeration would visit more states than its ceiling.
class WorkLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCycleWorkLimit = 100'000'000;

/// Size thresholds for the small / balanced / gap definitions. The constants
/// are only known to exist, so they are configuration, not derived values.
struct ClassifierThresholds {
  double beta0 = 1.0;
  double beta1 = 1.0;
  double balance_factor = 2.0;

  /// Throws std::invalid_argument unless all three are strictly positive.
  void validate() const;
};

struct StructureReport {
  std::uint64_t kappa = 0;
  std::uint64_t kappa_isolated = 0;
  std::uint64_t kappa_tree = 0;
  std::uint64_t kappa_unicyclic = 0;
  std::uint64_t kappa_complex = 0;
  std::uint64_t kappa_small_balanced_tree = 0;
  /// Small balanced components by class; only the tree count is a named
  /// report field, the other two feed the negligibility checks.
  std::uint64_t kappa_small_balanced_unicyclic = 0;
  std::uint64_t kappa_small_balanced_complex = 0;
  std::uint64_t largest_n1_intersection = 0;
  std::uint64_t second_largest_n1_intersection = 0;
  std::uint64_t s_paths = 0;
  std::uint64_t edge_count = 0;
  std::uint64_t vertex_count = 0;
};

struct Classification {
  std::vector<ComponentSummary> components;
  StructureReport report;
};

/// beta0 * (ln n1)^2.
double small_threshold(std::uint64_t n1, const ClassifierThresholds& th);
/// beta1 * sqrt(n1 ln n1).
double giant_threshold(std::uint64_t n1, const ClassifierThresholds& th);

/// Classifies every component (tree/unicyclic/complex by excess, small,
/// balanced) and fills the report. A component with no N1 vertex is an
/// isolated N2 vertex; it is counted as balanced (it is the order-one
/// N2 tree that the tree-density series includes).
/// Requires n1 >= 2 and p in [0, 1].
Classification classify_components(const BipartiteGraph& g, double p,
                                   const ClassifierThresholds& th = {});

/// S = number of 2-paths x-w-y with x, y in N1, i.e. sum over w in N2 of C(deg w, 2).
std::uint64_t count_s_paths(const BipartiteGraph& g);

/// Exact number of cycles (as edge sets) of each length 3..max_length.
/// Lengths without cycles are present with count zero. Throws
/// WorkLimitExceeded once the search visits more than `work_limit` states.
std::map<int, std::uint64_t> count_cycles_up_to(const SimpleGraph& g, int max_length,
                                                std::uint64_t work_limit = kDefaultCycleWorkLimit);

/// Cycles of even length 2k for k = 2..j in a bipartite graph; keys are the
/// lengths 4, 6, ..., 2j.
std::map<int, std::uint64_t> count_short_cycles(const BipartiteGraph& g, int j,
                                                std::uint64_t work_limit = kDefaultCycleWorkLimit);

struct GapCheck {
  bool ok = true;
  /// Components whose |C ∩ N1| falls in [beta0 ln^2 n1, beta1 sqrt(n1 ln n1)].
  std::vector<std::uint64_t> offending_sizes;
  /// Components meeting N1 in more than beta1 sqrt(n1 ln n1) vertices.
  std::uint64_t giant_count = 0;
};

/// At most one component above the giant threshold and none inside the gap.
GapCheck johansson_gap_check(const std::vector<ComponentSummary>& summaries, std::uint64_t n1,
                             const ClassifierThresholds& th = {});

/// Vertices of the 2-core (repeatedly strip degree <= 1), as a mask.
std::vector<bool> two_core_mask(const Csr& adj);

}  // namespace bipgenus
