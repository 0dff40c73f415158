#include "bipgenus/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bipgenus {

Xoshiro256::Xoshiro256(SeedSpec seed) {
  std::uint64_t x = seed.master_seed ^ splitmix64_mix(seed.trial_index);
  for (auto& word : s_) {
    // SplitMix64 step: advance then finalise.
    word = splitmix64_mix(x);
    x += 0x9E3779B97F4A7C15ull;
  }
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

SeedSpec tagged_seed(SeedSpec seed, std::uint64_t tag) {
  return {seed.master_seed ^ splitmix64_mix(~tag), seed.trial_index};
}

namespace detail {

std::vector<std::uint64_t> bernoulli_indices(std::uint64_t total, double p, Xoshiro256& rng) {
  std::vector<std::uint64_t> out;
  if (p <= 0.0) return out;
  out.reserve(static_cast<std::size_t>(std::min<double>(static_cast<double>(total),
                                                        p * static_cast<double>(total) * 1.1 + 16)));
  for (std::uint64_t i = 0; i < total; ++i) {
    if (rng.uniform() < p) out.push_back(i);
  }
  return out;
}

std::vector<std::uint64_t> skip_indices(std::uint64_t total, double p, Xoshiro256& rng) {
  std::vector<std::uint64_t> out;
  if (p <= 0.0) return out;
  if (p >= 1.0) {
    out.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) out[i] = i;
    return out;
  }
  out.reserve(static_cast<std::size_t>(p * static_cast<double>(total) * 1.1 + 16));
  const double log_q = std::log1p(-p);
  const double limit = static_cast<double>(total);
  std::uint64_t next = 0;  // first index not yet decided
  for (;;) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    // Positions are compared in double so a huge gap cannot wrap around.
    const double pos = static_cast<double>(next) + std::floor(std::log(u) / log_q);
    if (!(pos < limit)) break;
    const auto index = static_cast<std::uint64_t>(pos);
    out.push_back(index);
    next = index + 1;
  }
  return out;
}

std::vector<std::uint64_t> sample_indices(std::uint64_t total, double p, Xoshiro256& rng) {
  return p > kSkipSamplingMaxP ? bernoulli_indices(total, p, rng) : skip_indices(total, p, rng);
}

SimpleEdge pair_from_index(std::uint64_t n, std::uint64_t index) {
  // Row u holds pairs (u, u+1..n-1).
  std::uint64_t u = 0;
  std::uint64_t row_start = 0;
  while (row_start + (n - 1 - u) <= index) {
    row_start += n - 1 - u;
    ++u;
  }
  return {static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + (index - row_start))};
}

}  // namespace detail

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

BipartiteGraph sample_bipartite(Vertex n1, Vertex n2, double p, SeedSpec seed) {
  check_probability(p);
  std::uint64_t total = 0;
  if (__builtin_mul_overflow(std::uint64_t{n1}, std::uint64_t{n2}, &total) ||
      std::uint64_t{n1} + n2 > std::numeric_limits<Vertex>::max()) {
    throw std::invalid_argument("n1*n2 overflows the edge index type");
  }
  Xoshiro256 rng(seed);
  auto indices = detail::sample_indices(total, p, rng);
  std::vector<BipartiteEdge> edges;
  edges.reserve(indices.size());
  for (auto i : indices) {
    edges.push_back({static_cast<Vertex>(i / n2), static_cast<Vertex>(i % n2)});
  }
  return build_bipartite(n1, n2, std::move(edges));
}

SimpleGraph sample_binomial_graph(Vertex n, double q, SeedSpec seed) {
  check_probability(q);
  const std::uint64_t nn = n;
  std::uint64_t total = 0;
  if (nn >= 2 && __builtin_mul_overflow(nn, nn - 1, &total)) {
    throw std::invalid_argument("C(n,2) overflows the edge index type");
  }
  total /= 2;
  Xoshiro256 rng(seed);
  auto indices = detail::sample_indices(total, q, rng);
  std::vector<SimpleEdge> edges;
  edges.reserve(indices.size());
  // Indices ascend, so rows can be tracked incrementally.
  std::uint64_t u = 0;
  std::uint64_t row_start = 0;
  for (auto i : indices) {
    while (row_start + (nn - 1 - u) <= i) {
      row_start += nn - 1 - u;
      ++u;
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + (i - row_start))});
  }
  return build_simple(n, std::move(edges));
}

}  // namespace bipgenus
