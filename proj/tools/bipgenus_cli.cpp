#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bipgenus/genus.hpp"
#include "bipgenus/graph.hpp"
#include "bipgenus/harness.hpp"
#include "bipgenus/planarity.hpp"
#include "bipgenus/projection.hpp"
#include "bipgenus/sampler.hpp"
#include "bipgenus/structure.hpp"
#include "bipgenus/theory.hpp"

using namespace bipgenus;

namespace {

Json structure_json(const StructureReport& r) {
  return Json{{"kappa", r.kappa},
              {"kappa_isolated", r.kappa_isolated},
              {"kappa_tree", r.kappa_tree},
              {"kappa_unicyclic", r.kappa_unicyclic},
              {"kappa_complex", r.kappa_complex},
              {"kappa_small_balanced_tree", r.kappa_small_balanced_tree},
              {"largest_n1_intersection", r.largest_n1_intersection},
              {"second_largest_n1_intersection", r.second_largest_n1_intersection},
              {"s_paths", r.s_paths},
              {"edge_count", r.edge_count},
              {"vertex_count", r.vertex_count}};
}

Json series_json(const SeriesResult& s) {
  return Json{{"value", s.value},
              {"terms_used", s.terms_used},
              {"tail_bound", std::isfinite(s.tail_bound) ? Json(s.tail_bound) : Json(nullptr)},
              {"converged", s.converged}};
}

// "a,b,c" or "start:stop:step".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0)) {
      throw std::invalid_argument("grid must be a,b,c or start:stop:step");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

SeriesResult evaluate(const std::string& fn, double d, double lambda, double tol) {
  if (fn == "mu") return mu(d, tol);
  if (fn == "nu") return nu(d, lambda, tol);
  return gamma_const(d, lambda, tol);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random bipartite graphs: sampling, structure, genus bounds and experiments"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample G(n1, n2, p) or G(n, p)");
  std::string model = "bipartite";
  Vertex n1 = 0, n2 = 0;
  double p = 0.0;
  std::uint64_t seed = 0, trial = 0;
  std::string out_path;
  sample->add_option("--model", model)->check(CLI::IsMember({"bipartite", "simple"}));
  sample->add_option("--n1", n1, "N1 size (vertex count for --model simple)")->required();
  sample->add_option("--n2", n2);
  sample->add_option("--p", p)->required();
  sample->add_option("--seed", seed);
  sample->add_option("--trial", trial);
  sample->add_option("--out", out_path)->required();

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Classify components of a bipartite graph");
  std::string in_path;
  double analyze_p = 0.0;
  ClassifierThresholds th;
  bool as_json = false;
  analyze->add_option("--in", in_path)->required();
  analyze->add_option("--p", analyze_p)->required();
  analyze->add_option("--beta0", th.beta0);
  analyze->add_option("--beta1", th.beta1);
  analyze->add_flag("--json", as_json);

  // project
  auto* project = app.add_subcommand("project", "Build the 2-centre of a bipartite graph");
  std::string h_path, report_path;
  project->add_option("--in", in_path)->required();
  project->add_option("--out", h_path)->required();
  project->add_option("--report", report_path);

  // planar
  auto* planar = app.add_subcommand("planar", "Planarity test; exit code 0 when planar");
  planar->add_option("--in", in_path)->required();

  // genus
  auto* genus = app.add_subcommand("genus", "Genus interval, or the exact genus of a small graph");
  std::uint64_t max_states = kDefaultRotationCeiling;
  bool oracle = false;
  std::vector<int> j_range = kDefaultJRange;
  genus->add_option("--in", in_path)->required();
  genus->add_option("--exact-max-states", max_states);
  genus->add_option("--j", j_range);
  genus->add_flag("--json", as_json);
  genus->add_flag("--oracle", oracle);

  // constants
  auto* constants = app.add_subcommand("constants", "Evaluate mu, nu or gamma");
  std::string fn = "gamma";
  double d = 2.0, lambda = 1.0, tol = 1e-10;
  constants->add_option("--fn", fn)->check(CLI::IsMember({"mu", "nu", "gamma"}));
  constants->add_option("--d", d);
  constants->add_option("--lambda", lambda);
  constants->add_option("--tol", tol);
  constants->add_flag("--json", as_json);
  auto* table = constants->add_subcommand("table", "Grid of mu, nu and gamma");
  std::string d_grid = "1.5,2,3,5", lambda_grid = "0.25,0.5,1";
  bool csv = false;
  table->add_option("--d-grid", d_grid);
  table->add_option("--lambda-grid", lambda_grid);
  table->add_option("--tol", tol);
  table->add_flag("--csv", csv);

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo experiments");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "Run a config and write the report");
  std::string config_path, out_dir;
  run->add_option("--config", config_path)->required();
  run->add_option("--out", out_dir)->required();
  auto* list = experiment->add_subcommand("list", "List experiment ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      if (model == "bipartite") {
        write_graph_file(out_path, sample_bipartite(n1, n2, p, {seed, trial}));
      } else {
        write_graph_file(out_path, sample_binomial_graph(n1, p, {seed, trial}));
      }
    } else if (*analyze) {
      const auto g = std::get<BipartiteGraph>(read_graph_file(in_path));
      const auto cls = classify_components(g, analyze_p, th);
      if (as_json) {
        std::cout << structure_json(cls.report).dump(2) << "\n";
      } else {
        for (const auto& [key, value] : structure_json(cls.report).items()) {
          std::cout << key << " " << value << "\n";
        }
      }
    } else if (*project) {
      const auto g = std::get<BipartiteGraph>(read_graph_file(in_path));
      const auto proj = two_centre(g);
      write_graph_file(h_path, proj.h);
      if (!report_path.empty()) {
        Json hist = Json::object();
        for (const auto& [size, count] : proj.multiplicity_histogram) hist[std::to_string(size)] = count;
        Json rep{{"h_edges", proj.h.edge_count()},
                 {"h3_edges", proj.h3.edge_count_with_multiplicity()},
                 {"z_count", proj.z_count},
                 {"v1_count", proj.v1_count},
                 {"v2_count", proj.v2_count},
                 {"degree_two_count", proj.degree_two_count},
                 {"multiplicity_histogram", hist}};
        std::ofstream(report_path) << rep.dump(2) << "\n";
      }
    } else if (*planar) {
      const auto g = read_graph_file(in_path);
      const bool result = std::visit([](const auto& x) { return is_planar(x); }, g);
      std::cout << Json{{"planar", result}}.dump() << "\n";
      return result ? 0 : 1;
    } else if (*genus) {
      const auto g = read_graph_file(in_path);
      Json out;
      if (oracle) {
        ExactGenusStats stats;
        const auto value =
            std::visit([&](const auto& x) { return exact_genus_small(x, max_states, &stats); }, g);
        out = {{"exact_genus", value},
               {"systems_examined", stats.systems_examined},
               {"euler_violations", stats.euler_violations}};
      } else {
        const auto iv = std::visit([&](const auto& x) { return genus_interval(x, j_range); }, g);
        out = {{"lower", iv.lower},
               {"upper", iv.upper},
               {"point_estimate", iv.point_estimate},
               {"face_upper_bound", iv.face_upper_bound},
               {"j_star", iv.j_star}};
      }
      if (as_json) {
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& [key, value] : out.items()) std::cout << key << " " << value << "\n";
      }
    } else if (*constants) {
      if (*table) {
        const auto ds = parse_grid(d_grid);
        const auto ls = parse_grid(lambda_grid);
        Json rows = Json::array();
        if (csv) std::cout << "d,lambda,mu,mu_tail,nu,nu_tail,nu_converged,gamma,gamma_tail\n";
        for (double dv : ds) {
          const auto m = mu(dv, tol);
          for (double lv : ls) {
            const auto n = nu(dv, lv, tol);
            const auto g = gamma_const(dv, lv, tol);
            if (csv) {
              std::cout << dv << ',' << lv << ',' << m.value << ',' << m.tail_bound << ',' << n.value << ','
                        << n.tail_bound << ',' << (n.converged ? 1 : 0) << ',' << g.value << ','
                        << g.tail_bound << "\n";
            } else {
              rows.push_back({{"d", dv}, {"lambda", lv}, {"mu", series_json(m)}, {"nu", series_json(n)},
                              {"gamma", series_json(g)}});
            }
          }
        }
        if (!csv) std::cout << rows.dump(2) << "\n";
      } else {
        const auto s = evaluate(fn, d, lambda, tol);
        if (as_json) {
          Json out = series_json(s);
          out["fn"] = fn;
          out["d"] = d;
          if (fn != "mu") out["lambda"] = lambda;
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout.precision(15);
          std::cout << fn << " = " << s.value << " (tail " << s.tail_bound << ", " << s.terms_used << " terms"
                    << (s.converged ? "" : ", NOT converged") << ")\n";
        }
      }
    } else if (*experiment) {
      if (*list) {
        for (const auto& id : kExperimentIds) std::cout << id << "\n";
        return 0;
      }
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open " + config_path);
      const auto cfg = config_from_json(Json::parse(in));
      const auto records = run_trials(cfg);
      const auto report = aggregate(records, cfg);
      write_outputs(out_dir, report, records);
      for (const auto& c : report.criteria) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  observed=" << c.observed
                  << " reference=" << c.reference << "  " << c.detail << "\n";
      }
      return report.pass() ? 0 : 1;
    }
  } catch (const std::bad_variant_access&) {
    std::cerr << "error: this command needs a bipartite graph file\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
