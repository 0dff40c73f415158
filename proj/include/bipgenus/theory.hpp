#pragma once

#include <cstdint>
#include <string>

namespace bipgenus {

struct SeriesResult {
  double value = 0.0;
  std::uint64_t terms_used = 0;
  /// Certified bound on the truncation error; +infinity when no bound holds.
  double tail_bound = 0.0;
  bool converged = false;
};

inline constexpr std::uint64_t kMaxSeriesTerms = 100'000;

/// Genus density constant of G(n, d/n):
///   1/2 - 1/d + d^-2 * sum_k (d e^-d)^k k^(k-2) / k!
/// Valid as a series for every d > 0 (it vanishes identically on (0, 1]).
SeriesResult mu(double d, double tol = 1e-12);

/// Tree-component density of G(n1, n2, d / sqrt(n1 n2)) with lambda = n1/n2:
///   1/(d sqrt(lambda)) sum_k a^k sum_{r+s=k} r^(s-1) s^(r-1) / (r! s!) lambda^r b^s
/// with a = (d/sqrt(lambda)) e^(-d/sqrt(lambda)), b = e^(-d(lambda-1)/sqrt(lambda)).
/// Returns converged = false when the tail envelope does not decay.
SeriesResult nu(double d, double lambda, double tol = 1e-12);

/// 1 + (1 - d sqrt(lambda)) / lambda, the value of nu for d < 1.
double nu_closed_form(double d, double lambda);

/// 1/2 - (lambda+1)/(2 d sqrt(lambda)) + nu sqrt(lambda) / (2d). With
/// `closed_form_nu` the series is replaced by nu_closed_form (requires d < 1).
SeriesResult gamma_const(double d, double lambda, double tol = 1e-12, bool closed_form_nu = false);

/// nu truncated at k <= (ln n1)^3; an exact finite sum, so tail_bound = 0.
SeriesResult zeta(double d, std::uint64_t n1, double lambda);

/// floor((ln n1)^3), the truncation point used by zeta.
std::uint64_t zeta_cutoff(std::uint64_t n1);

/// Exact expected number of tree components with at most kmax vertices in
/// G(n1, n2, p), isolated vertices included.
double expected_tree_components_exact(std::uint64_t n1, std::uint64_t n2, double p, std::uint64_t kmax);

/// a^(b-1) b^(a-1); throws std::overflow_error beyond 128 bits.
unsigned __int128 spanning_tree_count(std::uint64_t a, std::uint64_t b);

std::string to_string_u128(unsigned __int128 v);

}  // namespace bipgenus
