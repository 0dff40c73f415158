#include "bipgenus/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bipgenus/genus.hpp"
#include "bipgenus/planarity.hpp"
#include "bipgenus/projection.hpp"
#include "bipgenus/sampler.hpp"
#include "bipgenus/theory.hpp"

namespace bipgenus {

// ---------------------------------------------------------------------------
// Config

void ExperimentConfig::validate() const {
  if (std::find(kExperimentIds.begin(), kExperimentIds.end(), experiment_id) == kExperimentIds.end()) {
    throw std::invalid_argument("unknown experiment id '" + experiment_id + "'");
  }
  if (n2.has_value() == lambda.has_value()) throw std::invalid_argument("give exactly one of n2 and lambda");
  if (d.has_value() == p.has_value()) throw std::invalid_argument("give exactly one of d and p");
  if (n1 < 2) throw std::invalid_argument("n1 must be at least 2");
  if (lambda && !(*lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (d && !(*d > 0.0)) throw std::invalid_argument("d must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (resolved_n2() < 1) throw std::invalid_argument("n2 must be at least 1");
  const double q = resolved_p();
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (j_range.empty()) throw std::invalid_argument("j_range must not be empty");
  for (int j : j_range) {
    if (j < 2) throw std::invalid_argument("j_range entries must be >= 2");
  }
  thresholds.validate();
}

std::uint64_t ExperimentConfig::resolved_n2() const {
  if (n2) return *n2;
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(n1) / *lambda));
}

double ExperimentConfig::resolved_p() const {
  if (p) return *p;
  return *d / std::sqrt(static_cast<double>(n1) * static_cast<double>(resolved_n2()));
}

double ExperimentConfig::resolved_lambda() const {
  return static_cast<double>(n1) / static_cast<double>(resolved_n2());
}

double ExperimentConfig::resolved_d() const {
  if (d) return *d;
  return *p * std::sqrt(static_cast<double>(n1) * static_cast<double>(resolved_n2()));
}

Tolerances default_tolerances(const std::string& experiment_id) {
  Tolerances t;
  if (experiment_id == "E4_unbalanced_projection") t.relative = 0.10;
  return t;
}

namespace {

Json tolerances_to_json(const Tolerances& t) {
  return Json{{"whp_fraction", t.whp_fraction},
              {"ci_z", t.ci_z},
              {"marginal_sigma", t.marginal_sigma},
              {"relative", t.relative},
              {"interval_low_slack", t.interval_low_slack},
              {"interval_high_slack", t.interval_high_slack},
              {"max_relative_width", t.max_relative_width},
              {"z_slack", t.z_slack},
              {"comparison_se", t.comparison_se},
              {"max_error_fraction", t.max_error_fraction}};
}

void read_tolerances(const Json& j, Tolerances& t) {
  static const std::set<std::string> known{
      "whp_fraction",        "ci_z",    "marginal_sigma", "relative",      "interval_low_slack",
      "interval_high_slack", "max_relative_width", "z_slack", "comparison_se", "max_error_fraction"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown tolerance '" + key + "'");
  }
  auto take = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  take("whp_fraction", t.whp_fraction);
  take("ci_z", t.ci_z);
  take("marginal_sigma", t.marginal_sigma);
  take("relative", t.relative);
  take("interval_low_slack", t.interval_low_slack);
  take("interval_high_slack", t.interval_high_slack);
  take("max_relative_width", t.max_relative_width);
  take("z_slack", t.z_slack);
  take("comparison_se", t.comparison_se);
  take("max_error_fraction", t.max_error_fraction);
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  static const std::set<std::string> known{"experiment_id", "n1", "n2", "lambda", "d", "p", "trials",
                                           "master_seed", "thresholds", "j_range", "work_limit",
                                           "tolerances", "threads", "given"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("unknown config field '" + key + "'");
  }
  ExperimentConfig cfg;
  cfg.experiment_id = j.at("experiment_id").get<std::string>();
  cfg.n1 = j.at("n1").get<std::uint64_t>();
  // A resolved config lists every derived value and names the inputs under "given".
  auto wanted = [&](const char* key, const char* pair) {
    if (!j.contains(key)) return false;
    return !j.contains("given") || j.at("given").at(pair).get<std::string>() == key;
  };
  if (wanted("n2", "n2")) cfg.n2 = j.at("n2").get<std::uint64_t>();
  if (wanted("lambda", "n2")) cfg.lambda = j.at("lambda").get<double>();
  if (wanted("d", "p")) cfg.d = j.at("d").get<double>();
  if (wanted("p", "p")) cfg.p = j.at("p").get<double>();
  cfg.trials = j.at("trials").get<std::uint64_t>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("thresholds")) {
    const auto& th = j.at("thresholds");
    cfg.thresholds.beta0 = th.value("beta0", cfg.thresholds.beta0);
    cfg.thresholds.beta1 = th.value("beta1", cfg.thresholds.beta1);
    cfg.thresholds.balance_factor = th.value("balance_factor", cfg.thresholds.balance_factor);
  }
  if (j.contains("j_range")) cfg.j_range = j.at("j_range").get<std::vector<int>>();
  if (j.contains("work_limit")) cfg.work_limit = j.at("work_limit").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
  cfg.tolerances = default_tolerances(cfg.experiment_id);
  if (j.contains("tolerances")) read_tolerances(j.at("tolerances"), cfg.tolerances);
  cfg.validate();
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j{{"experiment_id", cfg.experiment_id},
         {"n1", cfg.n1},
         {"n2", cfg.resolved_n2()},
         {"lambda", cfg.resolved_lambda()},
         {"d", cfg.resolved_d()},
         {"p", cfg.resolved_p()},
         {"trials", cfg.trials},
         {"master_seed", cfg.master_seed},
         {"thresholds",
          {{"beta0", cfg.thresholds.beta0},
           {"beta1", cfg.thresholds.beta1},
           {"balance_factor", cfg.thresholds.balance_factor}}},
         {"j_range", cfg.j_range},
         {"work_limit", cfg.work_limit},
         {"threads", cfg.threads},
         {"tolerances", tolerances_to_json(cfg.tolerances)}};
  // Record which of each pair was the input so a rerun from this file is identical.
  j["given"] = {{"n2", cfg.n2.has_value() ? "n2" : "lambda"}, {"p", cfg.p.has_value() ? "p" : "d"}};
  return j;
}

// ---------------------------------------------------------------------------
// Trials

namespace {

double flag(bool b) { return b ? 1.0 : 0.0; }

void genus_metrics(TrialRecord& r, const std::string& prefix, const GenusInterval& iv) {
  r.metrics[prefix + "genus_lower"] = static_cast<double>(iv.lower);
  r.metrics[prefix + "genus_upper"] = static_cast<double>(iv.upper);
  r.metrics[prefix + "point_estimate"] = iv.point_estimate;
  r.metrics[prefix + "face_upper_bound"] = static_cast<double>(iv.face_upper_bound);
  r.metrics[prefix + "j_star"] = iv.j_star;
  r.metrics[prefix + "relative_width"] =
      iv.upper == 0 ? 0.0 : static_cast<double>(iv.upper - iv.lower) / static_cast<double>(iv.upper);
}

}  // namespace

TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t trial) {
  TrialRecord r;
  r.trial = trial;
  const SeedSpec seed{cfg.master_seed, trial};
  const auto n1 = static_cast<Vertex>(cfg.n1);
  const auto n2 = static_cast<Vertex>(cfg.resolved_n2());
  const double p = cfg.resolved_p();
  const std::string& id = cfg.experiment_id;

  const BipartiteGraph g = sample_bipartite(n1, n2, p, seed);
  const auto cls = classify_components(g, p, cfg.thresholds);
  const auto& rep = cls.report;
  r.metrics["edges"] = static_cast<double>(g.edge_count());
  r.metrics["kappa"] = static_cast<double>(rep.kappa);

  if (id == "E1_subcritical_planarity") {
    r.metrics["planar"] = flag(is_planar(g));
    r.metrics["complex_components"] = static_cast<double>(rep.kappa_complex);
  } else if (id == "E2_tree_components") {
    r.metrics["small_balanced_trees"] = static_cast<double>(rep.kappa_small_balanced_tree);
    r.metrics["small_balanced_unicyclic"] = static_cast<double>(rep.kappa_small_balanced_unicyclic);
    r.metrics["small_balanced_complex"] = static_cast<double>(rep.kappa_small_balanced_complex);
    r.metrics["trees"] = static_cast<double>(rep.kappa_tree);
    r.metrics["unicyclic"] = static_cast<double>(rep.kappa_unicyclic);
    r.metrics["complex_components"] = static_cast<double>(rep.kappa_complex);
    r.metrics["isolated"] = static_cast<double>(rep.kappa_isolated);
  } else if (id == "E3_balanced_genus" || id == "E6_face_bound") {
    const auto iv = genus_interval(g, cfg.j_range, cfg.work_limit);
    genus_metrics(r, "", iv);
    r.metrics["vertices"] = static_cast<double>(g.vertex_count());
    const double scale = p * static_cast<double>(n1) * static_cast<double>(n2);
    r.metrics["euler_ratio"] = scale > 0.0 ? iv.point_estimate / scale : 0.0;
    r.metrics["faces_per_n1"] = static_cast<double>(iv.face_upper_bound) / static_cast<double>(n1);
  } else if (id == "E4_unbalanced_projection") {
    const auto proj = two_centre(g);
    const auto h_parts = connected_components(proj.h);
    std::uint64_t h_complex = 0;
    std::uint64_t h_giant = 0;
    for (const auto& c : h_parts) {
      if (c.cls == ComponentClass::complex) ++h_complex;
      h_giant = std::max<std::uint64_t>(h_giant, c.vertex_count());
    }
    r.metrics["h_edges"] = static_cast<double>(proj.h.edge_count());
    r.metrics["h3_edges"] = static_cast<double>(proj.h3.edge_count_with_multiplicity());
    r.metrics["z"] = static_cast<double>(proj.z_count);
    r.metrics["h_kappa"] = static_cast<double>(h_parts.size());
    r.metrics["h_complex"] = static_cast<double>(h_complex);
    r.metrics["h_largest_component"] = static_cast<double>(h_giant);
    r.metrics["max_multiplicity"] =
        proj.multiplicity_histogram.empty() ? 0.0 : static_cast<double>(proj.multiplicity_histogram.rbegin()->first);
    const auto h_iv = genus_interval(proj.h, cfg.j_range, cfg.work_limit);
    genus_metrics(r, "h_", h_iv);
    const double g_upper = static_cast<double>(genus_upper_bound(g));
    r.metrics["g_genus_upper"] = g_upper;
    r.metrics["sandwich_gap"] = g_upper - static_cast<double>(h_iv.upper);
    r.metrics["sandwich_ok"] = flag(g_upper - static_cast<double>(h_iv.upper) <= static_cast<double>(proj.z_count));
    // Comparison samples G(n1, 0.9 q) and G(n1, 1.1 q) on their own streams.
    const double q = p * p * static_cast<double>(n2);
    r.metrics["comparison_low_edges"] =
        static_cast<double>(sample_binomial_graph(n1, std::min(1.0, 0.9 * q), tagged_seed(seed, 1)).edge_count());
    r.metrics["comparison_high_edges"] =
        static_cast<double>(sample_binomial_graph(n1, std::min(1.0, 1.1 * q), tagged_seed(seed, 2)).edge_count());
  } else if (id == "E5_johansson_gap") {
    const auto gap = johansson_gap_check(cls.components, n1, cfg.thresholds);
    r.metrics["gap_ok"] = flag(gap.ok);
    r.metrics["giant_count"] = static_cast<double>(gap.giant_count);
    r.metrics["gap_offenders"] = static_cast<double>(gap.offending_sizes.size());
    r.metrics["largest_n1"] = static_cast<double>(rep.largest_n1_intersection);
    r.metrics["second_largest_n1"] = static_cast<double>(rep.second_largest_n1_intersection);
  }
  return r;
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TrialRecord> records(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t i = next++; i < cfg.trials; i = next++) {
      try {
        records[i] = run_trial(cfg, i);
      } catch (const std::exception& e) {
        records[i] = TrialRecord{i, false, e.what(), {}};
      }
    }
  };
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  return records;
}

// ---------------------------------------------------------------------------
// Aggregation

MetricSummary summarize(const std::vector<double>& values, double z) {
  if (values.empty()) throw std::invalid_argument("cannot summarise an empty sample");
  MetricSummary s;
  s.trials = values.size();
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  if (values.size() > 1) s.ci_half_width = z * s.sd / std::sqrt(n);
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  return s;
}

bool AggregateReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

namespace {

double binom2(double n) { return n * (n - 1.0) / 2.0; }

double standard_error(const MetricSummary& s) {
  return s.trials > 0 ? s.sd / std::sqrt(static_cast<double>(s.trials)) : 0.0;
}

class CriteriaBuilder {
 public:
  CriteriaBuilder(AggregateReport& report, const std::vector<TrialRecord>& ok)
      : report_(report), ok_(ok) {}

  const MetricSummary& metric(const std::string& name) const { return report_.metrics.at(name); }

  double fraction(const std::function<bool(const TrialRecord&)>& event) const {
    if (ok_.empty()) return 0.0;
    const auto hits = std::count_if(ok_.begin(), ok_.end(), event);
    return static_cast<double>(hits) / static_cast<double>(ok_.size());
  }

  void add(std::string name, bool pass, double observed, double reference, std::string detail) {
    report_.criteria.push_back({std::move(name), pass, observed, reference, std::move(detail)});
  }

  void theory(const std::string& name, double value, double tail, std::string description) {
    report_.theory[name] = {value, tail, std::move(description)};
  }

 private:
  AggregateReport& report_;
  const std::vector<TrialRecord>& ok_;
};

void e1_criteria(CriteriaBuilder& b, const Tolerances& t) {
  const double planar = b.fraction([](const TrialRecord& r) { return r.metrics.at("planar") == 1.0; });
  b.add("planar_fraction", planar >= t.whp_fraction, planar, t.whp_fraction, "fraction of planar trials");
  const double no_complex =
      b.fraction([](const TrialRecord& r) { return r.metrics.at("complex_components") == 0.0; });
  b.add("no_complex_fraction", no_complex >= t.whp_fraction, no_complex, t.whp_fraction,
        "fraction of trials without complex components");
}

void e2_criteria(CriteriaBuilder& b, const ExperimentConfig& cfg) {
  const auto& t = cfg.tolerances;
  const double n1 = static_cast<double>(cfg.n1);
  const double p = cfg.resolved_p();
  const auto kmax = static_cast<std::uint64_t>(std::ceil(std::pow(std::log(n1), 3.0)));
  const double exact = expected_tree_components_exact(cfg.n1, cfg.resolved_n2(), p, kmax);
  b.theory("expected_tree_components", exact, 0.0,
           "exact expectation of tree components on at most ceil((ln n1)^3) vertices");
  if (cfg.resolved_lambda() <= 1.0) {
    const auto nu_val = nu(cfg.resolved_d(), cfg.resolved_lambda(), 1e-10);
    b.theory("nu_n1", nu_val.value * n1, nu_val.tail_bound * n1, "nu(d, lambda) * n1, asymptotic tree count");
    const auto z = zeta(cfg.resolved_d(), cfg.n1, cfg.resolved_lambda());
    b.theory("zeta_n1", z.value * n1, 0.0, "zeta(d, n1, lambda) * n1, truncated series");
  }

  const double trees = b.metric("small_balanced_trees").mean;
  const double rel_trees = std::abs(trees - exact) / exact;
  b.add("small_balanced_trees_vs_exact", rel_trees <= t.relative, trees, exact,
        "relative error " + std::to_string(rel_trees));

  const double kappa_ref = exact + b.metric("unicyclic").mean + b.metric("complex_components").mean;
  const double kappa = b.metric("kappa").mean;
  const double rel_kappa = std::abs(kappa - kappa_ref) / kappa_ref;
  b.add("kappa_vs_exact_plus_cyclic", rel_kappa <= t.relative, kappa, kappa_ref,
        "relative error " + std::to_string(rel_kappa));

  const double log5 = std::pow(std::log(n1), 5.0);
  const double uni = b.fraction([&](const TrialRecord& r) { return r.metrics.at("unicyclic") <= log5; });
  b.add("unicyclic_below_log5", uni >= t.whp_fraction, uni, t.whp_fraction,
        "fraction of trials with unicyclic count <= (ln n1)^5");
  const double no_complex =
      b.fraction([](const TrialRecord& r) { return r.metrics.at("small_balanced_complex") == 0.0; });
  b.add("no_small_balanced_complex", no_complex >= t.whp_fraction, no_complex, t.whp_fraction,
        "fraction of trials without small balanced complex components");
}

void e3_criteria(CriteriaBuilder& b, const ExperimentConfig& cfg) {
  const auto& t = cfg.tolerances;
  const double scale = cfg.resolved_p() * static_cast<double>(cfg.n1) * static_cast<double>(cfg.resolved_n2());
  if (cfg.resolved_lambda() > 1.0) {
    b.add("gamma_inside_interval", false, 0.0, 0.0, "needs n1 <= n2");
    return;
  }
  const auto g = gamma_const(cfg.resolved_d(), cfg.resolved_lambda(), 1e-10);
  const double ref = g.value * scale;
  b.theory("gamma_p_n1_n2", ref, g.tail_bound * scale, "gamma(d, lambda) * p * n1 * n2");
  const double lo = t.interval_low_slack * b.metric("genus_lower").mean;
  const double hi = t.interval_high_slack * b.metric("genus_upper").mean;
  b.add("gamma_inside_interval", ref >= lo && ref <= hi, ref, lo,
        "window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  const double width = b.metric("relative_width").mean;
  b.add("relative_width", width <= t.max_relative_width, width, t.max_relative_width,
        "mean (upper - lower) / upper");
}

void e4_criteria(CriteriaBuilder& b, const ExperimentConfig& cfg) {
  const auto& t = cfg.tolerances;
  const double n1 = static_cast<double>(cfg.n1);
  const double n2 = static_cast<double>(cfg.resolved_n2());
  const double p = cfg.resolved_p();
  const double q = p * p * n2;
  const double h_ref = binom2(n1) * q;
  const double z_ref = p * p * p * n1 * n1 * n1 * n2;
  b.theory("h_edges", h_ref, 0.0, "C(n1, 2) p^2 n2");
  b.theory("z", z_ref, 0.0, "p^3 n1^3 n2");
  const double dd = q * n1;  // average degree of G(n1, q)
  const auto m = mu(dd, 1e-10);
  b.theory("genus_binomial_reference", m.value * dd * n1 / 2.0, m.tail_bound * dd * n1 / 2.0,
           "mu(d^2) d^2 n1 / 2, genus scale of G(n1, q)");

  const auto& h = b.metric("h_edges");
  const double rel = std::abs(h.mean - h_ref) / h_ref;
  b.add("h_edges_vs_reference", rel <= t.relative, h.mean, h_ref, "relative error " + std::to_string(rel));

  const double z = b.metric("z").mean;
  b.add("z_bound", z <= t.z_slack * z_ref, z, t.z_slack * z_ref, "mean Z against the slack times p^3 n1^3 n2");

  const auto& low = b.metric("comparison_low_edges");
  const auto& high = b.metric("comparison_high_edges");
  const double se_low = std::hypot(standard_error(h), standard_error(low));
  const double se_high = std::hypot(standard_error(h), standard_error(high));
  const double floor = low.mean - t.comparison_se * se_low;
  const double ceiling = high.mean + t.comparison_se * se_high;
  b.add("h_between_binomial_samples", h.mean >= floor && h.mean <= ceiling, h.mean, floor,
        "window [" + std::to_string(floor) + ", " + std::to_string(ceiling) + "]");

  const double sandwich = b.fraction([](const TrialRecord& r) { return r.metrics.at("sandwich_ok") == 1.0; });
  b.add("sandwich_every_trial", sandwich == 1.0, sandwich, 1.0,
        "fraction of trials with upper(G) - upper(H) <= Z");
}

void e5_criteria(CriteriaBuilder& b, const Tolerances& t) {
  const double ok = b.fraction([](const TrialRecord& r) { return r.metrics.at("gap_ok") == 1.0; });
  b.add("gap_fraction", ok >= t.whp_fraction, ok, t.whp_fraction, "fraction of trials with an empty size gap");
}

void e6_criteria(CriteriaBuilder& b, const ExperimentConfig& cfg) {
  const double n1 = static_cast<double>(cfg.n1);
  const double n2 = static_cast<double>(cfg.resolved_n2());
  const double p = cfg.resolved_p();
  const int j = *std::min_element(cfg.j_range.begin(), cfg.j_range.end());
  const double long_faces = 2.0 / (j + 1.0) * std::min(p * n1 * n2, p * p * n1 * n1 * n2);
  b.theory("long_face_term_per_n1", long_faces / n1, 0.0,
           "2/(j+1) min(p n1 n2, p^2 n1^2 n2) / n1 at the smallest j");
  const double consistent = b.fraction([](const TrialRecord& r) {
    return r.metrics.at("genus_lower") <= r.metrics.at("genus_upper") &&
           r.metrics.at("face_upper_bound") >= r.metrics.at("kappa");
  });
  b.add("bounds_consistent", consistent == 1.0, consistent, 1.0,
        "lower <= upper and at least one face per component in every trial");
}

}  // namespace

AggregateReport aggregate(std::vector<TrialRecord> records, const ExperimentConfig& cfg) {
  if (records.empty()) throw std::invalid_argument("no trial records to aggregate");
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.trial < b.trial; });
  AggregateReport report;
  report.config = cfg;
  report.trials = records.size();

  std::vector<TrialRecord> ok;
  for (const auto& r : records) {
    if (r.ok) {
      ok.push_back(r);
    } else {
      ++report.errors;
    }
  }
  std::map<std::string, std::vector<double>> columns;
  for (const auto& r : ok) {
    for (const auto& [name, value] : r.metrics) columns[name].push_back(value);
  }
  for (const auto& [name, values] : columns) report.metrics[name] = summarize(values, cfg.tolerances.ci_z);

  CriteriaBuilder b(report, ok);
  const double error_fraction = static_cast<double>(report.errors) / static_cast<double>(report.trials);
  b.add("trial_errors", error_fraction <= cfg.tolerances.max_error_fraction, error_fraction,
        cfg.tolerances.max_error_fraction, "fraction of trials that raised an error");
  if (ok.empty()) return report;

  const auto& id = cfg.experiment_id;
  if (id == "E1_subcritical_planarity") {
    e1_criteria(b, cfg.tolerances);
  } else if (id == "E2_tree_components") {
    e2_criteria(b, cfg);
  } else if (id == "E3_balanced_genus") {
    e3_criteria(b, cfg);
  } else if (id == "E4_unbalanced_projection") {
    e4_criteria(b, cfg);
  } else if (id == "E5_johansson_gap") {
    e5_criteria(b, cfg.tolerances);
  } else if (id == "E6_face_bound") {
    e6_criteria(b, cfg);
  }
  return report;
}

Json report_to_json(const AggregateReport& report) {
  Json metrics = Json::object();
  for (const auto& [name, s] : report.metrics) {
    Json m{{"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}, {"trials", s.trials}};
    if (s.ci_half_width) {
      m["ci_half_width"] = *s.ci_half_width;
      m["ci_low"] = s.mean - *s.ci_half_width;
      m["ci_high"] = s.mean + *s.ci_half_width;
    } else {
      m["ci_half_width"] = nullptr;
      m["ci_low"] = nullptr;
      m["ci_high"] = nullptr;
    }
    metrics[name] = m;
  }
  Json theory = Json::object();
  for (const auto& [name, t] : report.theory) {
    theory[name] = {{"value", t.value}, {"tail_bound", t.tail_bound}, {"description", t.description}};
  }
  Json criteria = Json::array();
  for (const auto& c : report.criteria) {
    criteria.push_back({{"name", c.name},
                        {"pass", c.pass},
                        {"observed", c.observed},
                        {"reference", c.reference},
                        {"detail", c.detail}});
  }
  const auto& t = report.config.tolerances;
  return Json{{"experiment_id", report.config.experiment_id},
              {"config", config_to_json(report.config)},
              {"conventions",
               {{"whp", "event holds in at least whp_fraction of trials"},
                {"whp_fraction", t.whp_fraction},
                {"ci_level", 0.95},
                {"ci_z", t.ci_z},
                {"marginal_sigma", t.marginal_sigma}}},
              {"trials", report.trials},
              {"errors", report.errors},
              {"metrics", metrics},
              {"theory_reference", theory},
              {"criteria", criteria},
              {"pass", report.pass()}};
}

std::string trials_csv(std::vector<TrialRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return a.trial < b.trial; });
  std::set<std::string> names;
  for (const auto& r : records) {
    for (const auto& [name, value] : r.metrics) names.insert(name);
  }
  std::ostringstream out;
  out.precision(17);
  out << "trial,ok,error";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (const auto& r : records) {
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << r.trial << ',' << (r.ok ? 1 : 0) << ',' << error;
    for (const auto& n : names) {
      out << ',';
      if (auto it = r.metrics.find(n); it != r.metrics.end()) out << it->second;
    }
    out << '\n';
  }
  return out.str();
}

void write_outputs(const std::string& dir, const AggregateReport& report,
                   const std::vector<TrialRecord>& records) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + name + " in " + dir);
    f << text;
  };
  write("report.json", report_to_json(report).dump(2) + "\n");
  write("trials.csv", trials_csv(records));
  write("config.resolved.json", config_to_json(report.config).dump(2) + "\n");
}

}  // namespace bipgenus
