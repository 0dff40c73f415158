#include "bipgenus/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bipgenus {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

double log_factorial(double k) { return std::lgamma(k + 1.0); }

// base^exponent in log space with 0^0 = 1.
double log_pow(double base, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (base == 0.0) return -kInf;
  return exponent * std::log(base);
}

// Inner sum over r + s = k of r^(s-1) s^(r-1) / (r! s!) lambda^r b^s, times a^k.
// `logs` caches ln r and ln r! for r < k.
struct LogTables {
  std::vector<double> ln{0.0};
  std::vector<double> ln_fact{0.0};
  void grow(std::uint64_t k) {
    while (ln.size() <= k) {
      const double r = static_cast<double>(ln.size());
      ln.push_back(std::log(r));
      ln_fact.push_back(ln_fact.back() + ln.back());
    }
  }
};

double nu_term(std::uint64_t k, double log_a, double log_lambda, double log_b, LogTables& logs) {
  if (k == 1) return std::exp(log_a) * (std::exp(log_lambda) + std::exp(log_b));
  logs.grow(k);
  KahanSum inner;
  const double base = static_cast<double>(k) * log_a;
  for (std::uint64_t r = 1; r < k; ++r) {
    const std::uint64_t s = k - r;
    const double rr = static_cast<double>(r);
    const double ss = static_cast<double>(s);
    const double log_t = (ss - 1.0) * logs.ln[r] + (rr - 1.0) * logs.ln[s] - logs.ln_fact[r] -
                         logs.ln_fact[s] + rr * log_lambda + ss * log_b + base;
    inner.add(std::exp(log_t));
  }
  return inner.sum;
}

struct NuParams {
  double log_a;
  double log_lambda;
  double log_b;
  double prefactor;  // 1 / (d sqrt(lambda))
};

NuParams nu_params(double d, double lambda) {
  if (!(d > 0.0) || !(lambda > 0.0) || lambda > 1.0) {
    throw std::invalid_argument("nu needs d > 0 and lambda in (0, 1]");
  }
  const double root = std::sqrt(lambda);
  const double c = d / root;
  return {std::log(c) - c, std::log(lambda), -d * (lambda - 1.0) / root, 1.0 / (d * root)};
}

// Growth exponent psi with term_k <= prefactor * e^(k psi) / (2 pi sqrt(k-1)),
// from Stirling's lower bound on r! s!.
double nu_growth_exponent(const NuParams& q) {
  auto phi = [&](double x) {
    return x * q.log_lambda + (1.0 - x) * q.log_b - (1.0 - 2.0 * x) * std::log((1.0 - x) / x);
  };
  constexpr double lo0 = 1e-12;
  constexpr double hi0 = 1.0 - 1e-12;
  constexpr int grid = 2000;
  double best_x = 0.5;
  double best = phi(best_x);
  for (int i = 1; i < grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    if (phi(x) > best) {
      best = phi(x);
      best_x = x;
    }
  }
  // phi is concave; refine around the best grid point.
  double lo = std::max(lo0, best_x - 1.0 / grid);
  double hi = std::min(hi0, best_x + 1.0 / grid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - g * (hi - lo);
    const double x2 = lo + g * (hi - lo);
    if (phi(x1) < phi(x2)) {
      lo = x1;
    } else {
      hi = x2;
    }
  }
  best = std::max({best, phi(0.5 * (lo + hi)), phi(lo0), phi(hi0)});
  return q.log_a + 1.0 + best + 1e-9;
}

}  // namespace

SeriesResult mu(double d, double tol) {
  if (!(d > 0.0)) throw std::invalid_argument("mu needs d > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double log_x = std::log(d) - d;
  const double rho = d * std::exp(1.0 - d);  // <= 1, equality only at d = 1
  const double scale = 1.0 / (d * d);
  const double stirling = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  SeriesResult out;
  KahanSum sum;
  for (std::uint64_t k = 1; k <= kMaxSeriesTerms; ++k) {
    const double kk = static_cast<double>(k);
    sum.add(std::exp(kk * log_x + (kk - 2.0) * std::log(kk) - log_factorial(kk)));
    out.terms_used = k;
    // k^(k-2)/k! <= e^k / (sqrt(2 pi) k^(5/2)), so the tail after K is at most
    // the geometric or the integral comparison, whichever is smaller.
    double tail = stirling * (2.0 / 3.0) * std::pow(kk, -1.5);
    if (rho < 1.0) {
      tail = std::min(tail, stirling * std::pow(rho, kk + 1.0) / (std::pow(kk + 1.0, 2.5) * (1.0 - rho)));
    }
    out.tail_bound = tail * scale;
    if (out.tail_bound <= tol) break;
  }
  out.value = 0.5 - 1.0 / d + scale * sum.sum;
  out.converged = out.tail_bound <= tol;
  return out;
}

SeriesResult nu(double d, double lambda, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const NuParams q = nu_params(d, lambda);
  const double psi = nu_growth_exponent(q);
  const double envelope = q.prefactor / (2.0 * std::numbers::pi);

  SeriesResult out;
  out.tail_bound = kInf;
  KahanSum sum;
  LogTables logs;
  // Without a decaying envelope the partial sums prove nothing; keep the work bounded.
  const std::uint64_t limit = psi < 0.0 ? kMaxSeriesTerms : 2000;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    sum.add(nu_term(k, q.log_a, q.log_lambda, q.log_b, logs));
    out.terms_used = k;
    if (psi < 0.0) {
      const double kk = static_cast<double>(k);
      out.tail_bound = envelope * std::exp((kk + 1.0) * psi) / (std::sqrt(kk) * (1.0 - std::exp(psi)));
      if (out.tail_bound <= tol) break;
    }
  }
  out.value = q.prefactor * sum.sum;
  out.converged = out.tail_bound <= tol;
  return out;
}

double nu_closed_form(double d, double lambda) {
  return 1.0 + (1.0 - d * std::sqrt(lambda)) / lambda;
}

SeriesResult gamma_const(double d, double lambda, double tol, bool closed_form_nu) {
  SeriesResult n;
  if (closed_form_nu) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("closed-form nu needs 0 < d < 1");
    n.value = nu_closed_form(d, lambda);
    n.converged = true;
  } else {
    n = nu(d, lambda, tol);
  }
  const double root = std::sqrt(lambda);
  SeriesResult out = n;
  out.value = 0.5 - (lambda + 1.0) / (2.0 * d * root) + n.value * root / (2.0 * d);
  out.tail_bound = n.tail_bound * root / (2.0 * d);
  out.converged = closed_form_nu || out.tail_bound <= tol;
  return out;
}

std::uint64_t zeta_cutoff(std::uint64_t n1) {
  if (n1 < 2) return 0;
  const double l = std::log(static_cast<double>(n1));
  return static_cast<std::uint64_t>(std::floor(l * l * l + 1e-9));
}

SeriesResult zeta(double d, std::uint64_t n1, double lambda) {
  const NuParams q = nu_params(d, lambda);
  SeriesResult out;
  KahanSum sum;
  LogTables logs;
  const auto cutoff = zeta_cutoff(n1);
  for (std::uint64_t k = 1; k <= cutoff; ++k) sum.add(nu_term(k, q.log_a, q.log_lambda, q.log_b, logs));
  out.value = q.prefactor * sum.sum;
  out.terms_used = cutoff;
  out.converged = true;
  return out;
}

double expected_tree_components_exact(std::uint64_t n1, std::uint64_t n2, double p, std::uint64_t kmax) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  const double ln1 = log_factorial(static_cast<double>(n1));
  const double ln2 = log_factorial(static_cast<double>(n2));
  auto log_choose = [](double whole, double n, double k) {
    return whole - log_factorial(k) - log_factorial(n - k);
  };
  KahanSum sum;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    const std::uint64_t r_lo = k > n2 ? k - n2 : 0;
    const std::uint64_t r_hi = std::min(k, n1);
    for (std::uint64_t r = r_lo; r <= r_hi; ++r) {
      const std::uint64_t s = k - r;
      if ((r == 0 || s == 0) && k > 1) continue;  // disconnected
      const double rr = static_cast<double>(r);
      const double ss = static_cast<double>(s);
      // Potential edges that must be absent: all pairs touching the tree minus its k-1 edges.
      const double absent = rr * static_cast<double>(n2 - s) + ss * static_cast<double>(n1 - r) +
                            rr * ss - static_cast<double>(k) + 1.0;
      double log_t = log_choose(ln1, static_cast<double>(n1), rr) +
                     log_choose(ln2, static_cast<double>(n2), ss) + log_pow(p, static_cast<double>(k - 1)) +
                     log_pow(1.0 - p, absent);
      if (r > 0 && s > 0) log_t += (ss - 1.0) * std::log(rr) + (rr - 1.0) * std::log(ss);
      if (log_t == -kInf) continue;
      sum.add(std::exp(log_t));
    }
  }
  return sum.sum;
}

unsigned __int128 spanning_tree_count(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("spanning_tree_count needs a, b >= 1");
  using u128 = unsigned __int128;
  const u128 max = ~u128{0};
  u128 out = 1;
  auto times = [&](std::uint64_t base, std::uint64_t exponent) {
    if (base == 1) return;
    for (std::uint64_t i = 0; i < exponent; ++i) {
      if (out > max / base) throw std::overflow_error("spanning tree count exceeds 128 bits");
      out *= base;
    }
  };
  times(a, b - 1);
  times(b, a - 1);
  return out;
}

std::string to_string_u128(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

}  // namespace bipgenus
