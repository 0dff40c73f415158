#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bipgenus/harness.hpp"

using namespace bipgenus;

namespace {

ExperimentConfig small_config(const std::string& id) {
  ExperimentConfig cfg;
  cfg.experiment_id = id;
  cfg.n1 = 300;
  cfg.n2 = 300;
  cfg.d = id == "E1_subcritical_planarity" ? 0.9 : 2.0;
  cfg.trials = 6;
  cfg.master_seed = 99;
  cfg.tolerances = default_tolerances(id);
  return cfg;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config validation") {
  auto cfg = small_config("E3_balanced_genus");
  CHECK_NOTHROW(cfg.validate());

  auto bad = cfg;
  bad.experiment_id = "E9";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.trials = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.p = 0.01;  // both d and p
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.lambda = 1.0;  // both n2 and lambda
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.d = 1000.0;  // p > 1
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK_THROWS(config_from_json(Json{{"experiment_id", "E1_subcritical_planarity"}, {"n1", 10}, {"n2", 10},
                                     {"d", 0.5}, {"trials", 1}, {"master_seed", 0}, {"colour", "red"}}));
}

TEST_CASE("derived parameters") {
  ExperimentConfig cfg;
  cfg.experiment_id = "E4_unbalanced_projection";
  cfg.n1 = 500;
  cfg.lambda = 0.002;
  cfg.d = 2.0;
  CHECK(cfg.resolved_n2() == 250000);
  CHECK(cfg.resolved_p() == doctest::Approx(2.0 / std::sqrt(500.0 * 250000.0)));
  CHECK(default_tolerances("E4_unbalanced_projection").relative == 0.10);
  CHECK(default_tolerances("E3_balanced_genus").relative == 0.05);
}

TEST_CASE("summarize examples") {
  const auto one = summarize({3.0});
  CHECK(one.mean == 3.0);
  CHECK(one.sd == 0.0);
  CHECK_FALSE(one.ci_half_width.has_value());

  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  CHECK(s.trials == 4);
  REQUIRE(s.ci_half_width.has_value());
  CHECK(*s.ci_half_width == doctest::Approx(1.96 * std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("aggregate rejects empty input and counts failed trials") {
  const auto cfg = small_config("E1_subcritical_planarity");
  CHECK_THROWS_AS(aggregate({}, cfg), std::invalid_argument);

  auto records = run_trials(cfg);
  records[2].ok = false;
  records[2].error = "synthetic";
  records[2].metrics.clear();
  const auto report = aggregate(records, cfg);
  CHECK(report.errors == 1);
  CHECK(report.metrics.at("planar").trials == 5);
  CHECK_FALSE(report.pass());  // 1 of 6 exceeds the 1% error budget
}

TEST_CASE("runs are reproducible and independent of thread count") {
  for (const auto& id : kExperimentIds) {
    auto cfg = small_config(id);
    if (id == "E4_unbalanced_projection") {
      cfg.n1 = 60;
      cfg.n2 = 3000;
    }
    cfg.threads = 1;
    const auto a = run_trials(cfg);
    cfg.threads = 3;
    const auto b = run_trials(cfg);
    CHECK(report_to_json(aggregate(a, cfg)).dump() == report_to_json(aggregate(b, cfg)).dump());
    CHECK(trials_csv(a) == trials_csv(b));
  }
}

TEST_CASE("property: aggregation is invariant under permutation of records") {
  const auto cfg = small_config("E2_tree_components");
  const auto records = run_trials(cfg);
  const auto reference = report_to_json(aggregate(records, cfg)).dump();
  const auto csv = trials_csv(records);
  std::mt19937 shuffle_rng(5);
  for (int k = 0; k < 10; ++k) {
    auto shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), shuffle_rng);
    CHECK(report_to_json(aggregate(shuffled, cfg)).dump() == reference);
    CHECK(trials_csv(shuffled) == csv);
  }
}

TEST_CASE("run_trial matches the pooled result for the same index") {
  const auto cfg = small_config("E3_balanced_genus");
  const auto pooled = run_trials(cfg);
  const auto single = run_trial(cfg, 4);
  CHECK(pooled[4].metrics == single.metrics);
}

TEST_CASE("report layout and byte-identical outputs") {
  const auto cfg = small_config("E5_johansson_gap");
  const auto records = run_trials(cfg);
  const auto report = aggregate(records, cfg);
  const auto j = report_to_json(report);
  for (const char* key : {"experiment_id", "config", "conventions", "trials", "errors", "metrics",
                          "theory_reference", "criteria", "pass"}) {
    CHECK(j.contains(key));
  }

  const auto dir = std::filesystem::temp_directory_path() / "bipgenus_harness_test";
  std::filesystem::remove_all(dir);
  write_outputs((dir / "a").string(), report, records);
  write_outputs((dir / "b").string(), aggregate(run_trials(cfg), cfg), run_trials(cfg));
  for (const char* file : {"report.json", "trials.csv", "config.resolved.json"}) {
    CHECK(slurp(dir / "a" / file) == slurp(dir / "b" / file));
  }

  // The resolved config re-reads to the same run.
  const auto resolved = config_from_json(Json::parse(slurp(dir / "a" / "config.resolved.json")));
  CHECK(config_to_json(resolved) == config_to_json(cfg));
  CHECK(trials_csv(run_trials(resolved)) == trials_csv(records));

  const auto header = slurp(dir / "a" / "trials.csv").substr(0, 15);
  CHECK(header == "trial,ok,error,");
  std::filesystem::remove_all(dir);
}

TEST_CASE("config round-trip keeps which inputs were given") {
  ExperimentConfig cfg;
  cfg.experiment_id = "E4_unbalanced_projection";
  cfg.n1 = 100;
  cfg.lambda = 0.01;
  cfg.p = 0.001;
  cfg.trials = 2;
  const auto back = config_from_json(config_to_json(cfg));
  CHECK(back.lambda.has_value());
  CHECK_FALSE(back.n2.has_value());
  CHECK(back.p.has_value());
  CHECK_FALSE(back.d.has_value());
  CHECK(config_to_json(back) == config_to_json(cfg));
}
