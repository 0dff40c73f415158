#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "bipgenus/graph.hpp"

namespace bipgenus {

/// Identifies one reproducible random stream.
///
/// The stream is a pure function of (master_seed, trial_index):
///
///   key   = master_seed XOR splitmix64_mix(trial_index)
///   state = four consecutive outputs of SplitMix64 started at `key`
///
/// and the generator is xoshiro256** over that state. Everything is defined
/// on unsigned 64-bit arithmetic, so streams agree across platforms.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// The SplitMix64 finaliser (Stafford variant 13).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// xoshiro256** 1.0; satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(SeedSpec seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) from the top 53 bits of one output.
  double uniform();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Derives an independent stream key for auxiliary samples of a trial
/// (e.g. comparison graphs) so they never share a stream with the main one.
SeedSpec tagged_seed(SeedSpec seed, std::uint64_t tag);

/// Per-edge Bernoulli threshold above which the geometric skip sampler is
/// replaced by one uniform draw per potential edge.
inline constexpr double kSkipSamplingMaxP = 0.1;

namespace detail {

/// Indices in [0, total) each kept independently with probability p, in
/// increasing order, drawn one uniform per index.
std::vector<std::uint64_t> bernoulli_indices(std::uint64_t total, double p, Xoshiro256& rng);

/// Same distribution via geometric skips: each gap is
/// floor(log(U) / log(1 - p)) with U uniform on (0, 1].
std::vector<std::uint64_t> skip_indices(std::uint64_t total, double p, Xoshiro256& rng);

/// Dispatches between the two by kSkipSamplingMaxP.
std::vector<std::uint64_t> sample_indices(std::uint64_t total, double p, Xoshiro256& rng);

/// Inverse of the lexicographic index of pair (u, v), u < v, among C(n,2).
SimpleEdge pair_from_index(std::uint64_t n, std::uint64_t index);

}  // namespace detail

/// G(n1, n2, p): every one of the n1*n2 cross pairs independently with
/// probability p. Potential edge (u, w) has index u*n2 + w.
/// Throws std::invalid_argument for p outside [0, 1] or an index overflow.
BipartiteGraph sample_bipartite(Vertex n1, Vertex n2, double p, SeedSpec seed);

/// G(n, q) over the C(n,2) pairs in lexicographic order.
SimpleGraph sample_binomial_graph(Vertex n, double q, SeedSpec seed);

}  // namespace bipgenus
