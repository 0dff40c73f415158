#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bipgenus/structure.hpp"

namespace bipgenus {

using Json = nlohmann::json;

inline const std::vector<std::string> kExperimentIds{
    "E1_subcritical_planarity", "E2_tree_components",  "E3_balanced_genus",
    "E4_unbalanced_projection", "E5_johansson_gap",    "E6_face_bound",
};

/// Pass/fail conventions. Every field is written into the resolved config.
struct Tolerances {
  double whp_fraction = 0.95;      // "with high probability" at desk scale
  double ci_z = 1.96;              // 95% normal interval
  double marginal_sigma = 4.0;     // two-sided check of a marginal against its mean
  double relative = 0.05;          // relative tolerance of mean vs exact expectation
  double interval_low_slack = 0.95;
  double interval_high_slack = 1.05;
  double max_relative_width = 0.5;
  double z_slack = 1.1;            // mean Z <= z_slack * p^3 n1^3 n2
  double comparison_se = 3.0;      // standard errors allowed around the G(n, q) comparison
  double max_error_fraction = 0.01;
};

struct ExperimentConfig {
  std::string experiment_id;
  std::uint64_t n1 = 0;
  std::optional<std::uint64_t> n2;
  std::optional<double> lambda;
  std::optional<double> d;
  std::optional<double> p;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  ClassifierThresholds thresholds;
  std::vector<int> j_range{2, 3, 4, 5};
  std::uint64_t work_limit = kDefaultCycleWorkLimit;
  Tolerances tolerances;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws std::invalid_argument on an inconsistent config.
  void validate() const;
  std::uint64_t resolved_n2() const;
  double resolved_p() const;
  double resolved_lambda() const;
  /// Only defined when d was given or is implied by p.
  double resolved_d() const;
};

/// Default tolerances per experiment (E4 uses a 10% relative band).
Tolerances default_tolerances(const std::string& experiment_id);

/// Parses a config; tolerances missing from the JSON take the experiment's defaults.
ExperimentConfig config_from_json(const Json& j);
/// Every field explicit, including derived n2 and p.
Json config_to_json(const ExperimentConfig& cfg);

struct TrialRecord {
  std::uint64_t trial = 0;
  bool ok = true;
  std::string error;
  std::map<std::string, double> metrics;
};

/// Runs trial i with SeedSpec{master_seed, i} on a thread pool; the result is
/// indexed by trial and independent of scheduling.
std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg);

/// One trial, exposed for testing.
TrialRecord run_trial(const ExperimentConfig& cfg, std::uint64_t trial);

struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::optional<double> ci_half_width;
  double min = 0.0;
  double max = 0.0;
  std::uint64_t trials = 0;
};

MetricSummary summarize(const std::vector<double>& values, double z = 1.96);

struct TheoryReference {
  double value = 0.0;
  double tail_bound = 0.0;
  std::string description;
};

struct Criterion {
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double reference = 0.0;
  std::string detail;
};

struct AggregateReport {
  ExperimentConfig config;
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  std::map<std::string, MetricSummary> metrics;
  std::map<std::string, TheoryReference> theory;
  std::vector<Criterion> criteria;
  bool pass() const;
};

/// Throws std::invalid_argument on empty input.
AggregateReport aggregate(std::vector<TrialRecord> records, const ExperimentConfig& cfg);

Json report_to_json(const AggregateReport& report);
/// One row per trial, columns: trial, ok, error, then metric names sorted.
std::string trials_csv(std::vector<TrialRecord> records);

/// Writes report.json, trials.csv and config.resolved.json into `dir`.
void write_outputs(const std::string& dir, const AggregateReport& report,
                   const std::vector<TrialRecord>& records);

}  // namespace bipgenus
