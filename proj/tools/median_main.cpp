// median: metric 1-median solvers over a query-counted distance oracle.
//
//   median run      batch experiments -> JSON/CSV report
//   median exact    exhaustive 1-median of a matrix file
//   median scaling  mean query count across sizes + log-log slope
//
// Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "median/exact.hpp"
#include "median/experiment.hpp"

namespace {

struct FamilyFlags {
  std::string family = "euclidean-uniform";
  int n = 1000;
  int dim = 2;
  int clusters = 5;
  double spread = 0.05;
  std::string input;  // explicit matrix file
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
  cmd->add_option("--family", f.family,
                  "discrete | euclidean-uniform | euclidean-clustered | explicit")
      ->capture_default_str();
  cmd->add_option("--n", f.n, "number of points (generated families)")->capture_default_str();
  cmd->add_option("--dim", f.dim, "dimension (euclidean families)")->capture_default_str();
  cmd->add_option("--clusters", f.clusters, "cluster count (euclidean-clustered)")
      ->capture_default_str();
  cmd->add_option("--spread", f.spread, "cluster sigma (euclidean-clustered)")
      ->capture_default_str();
  cmd->add_option("--input", f.input, "matrix file (family = explicit)");
}

median::MetricFamily make_family(const FamilyFlags& f) {
  median::MetricFamily family;
  family.kind = median::family_from_name(f.family);
  family.n = f.n;
  family.dim = f.dim;
  family.clusters = f.clusters;
  family.spread = f.spread;
  family.path = f.input;
  if (family.kind == median::FamilyKind::Explicit && family.path.empty())
    throw CLI::ValidationError("--input", "explicit family needs a matrix file");
  return family;
}

int cmd_run(const FamilyFlags& family_flags, const std::string& solver,
            double epsilon, const std::string& mode, int trials, std::uint64_t seed,
            const std::string& format, const std::string& out,
            std::optional<double> sample_constant, std::optional<double> inner_epsilon,
            std::optional<std::uint64_t> budget) {
  median::ExperimentSpec spec;
  spec.solver = median::solver_from_name(solver);
  spec.family = make_family(family_flags);
  spec.epsilon = epsilon;
  spec.mode = median::mode_from_name(mode);
  spec.trials = trials;
  spec.seed = seed;
  spec.sample_constant = sample_constant;
  spec.inner_epsilon = inner_epsilon;
  spec.max_query_budget = budget;

  const median::ReportFormat fmt = format == "csv" ? median::ReportFormat::Csv
                                                   : median::ReportFormat::Json;
  if (format != "csv" && format != "json")
    throw CLI::ValidationError("--format", "expected json or csv");

  const median::AggregateReport report = median::run_experiment(spec);
  if (out.empty()) {
    median::write_report(report, std::cout, fmt);
  } else {
    median::write_report_file(report, out, fmt);
    std::cerr << "wrote " << out << "\n";
  }
  const median::Summary& s = report.summary;
  std::cerr << "trials " << s.trials << "  mean queries " << s.mean_queries
            << "  mean iterations " << s.mean_iterations;
  if (s.max_ratio) std::cerr << "  max ratio " << *s.max_ratio;
  std::cerr << "\n";
  return 0;
}

int cmd_exact(const std::string& input) {
  const median::MetricOracle oracle = median::load_matrix_file(input);
  const median::CostSummary best = median::brute_force_median(oracle);
  std::cout << "point " << best.point << "\n"
            << "cost " << best.cost << "\n"
            << "queries " << oracle.query_count() << "\n";
  return 0;
}

int cmd_scaling(const FamilyFlags& family_flags, const std::string& solver,
                const std::vector<int>& sizes, double epsilon, const std::string& mode,
                int trials, std::uint64_t seed) {
  std::vector<median::ExperimentSpec> specs;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    median::ExperimentSpec spec;
    spec.solver = median::solver_from_name(solver);
    spec.family = make_family(family_flags);
    spec.family.n = sizes[i];
    spec.epsilon = epsilon;
    spec.mode = median::mode_from_name(mode);
    spec.trials = trials;
    spec.seed = median::rng::derive(seed, i);
    specs.push_back(spec);
  }
  const median::ScalingReport report = median::query_scaling_report(specs);
  median::write_scaling_table(report, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric 1-median solvers (exact, sampling, Las Vegas certificate loop)"};
  app.require_subcommand(1);

  // --- run ---
  FamilyFlags run_family;
  std::string run_solver = "lasvegas";
  double run_epsilon = 1.0;
  std::string run_mode = "practical";
  int run_trials = 1;
  std::uint64_t run_seed = 0;
  std::string run_format = "json";
  std::string run_out;
  std::optional<double> run_sample_constant;
  std::optional<double> run_inner_epsilon;
  std::optional<std::uint64_t> run_budget;

  CLI::App* run = app.add_subcommand("run", "run an experiment and write a report");
  run->add_option("--solver", run_solver, "exact | indyk | lasvegas")->capture_default_str();
  add_family_flags(run, run_family);
  run->add_option("--epsilon", run_epsilon, "approximation parameter")->capture_default_str();
  run->add_option("--mode", run_mode, "practical | faithful")->capture_default_str();
  run->add_option("--trials", run_trials, "independent trials")->capture_default_str();
  run->add_option("--seed", run_seed, "root seed")->capture_default_str();
  run->add_option("--format", run_format, "json | csv")->capture_default_str();
  run->add_option("--out", run_out, "report path (stdout when omitted)");
  run->add_option("--sample-constant", run_sample_constant, "override sampler constant");
  run->add_option("--inner-epsilon", run_inner_epsilon, "override inner sampler epsilon");
  run->add_option("--budget", run_budget, "override query budget (default n^2)");

  // --- exact ---
  std::string exact_input;
  CLI::App* exact = app.add_subcommand("exact", "exhaustive 1-median of a matrix file");
  exact->add_option("--input", exact_input, "matrix file")->required();

  // --- scaling ---
  FamilyFlags scaling_family;
  std::string scaling_solver = "lasvegas";
  std::vector<int> scaling_sizes;
  double scaling_epsilon = 1.0;
  std::string scaling_mode = "practical";
  int scaling_trials = 5;
  std::uint64_t scaling_seed = 0;

  CLI::App* scaling = app.add_subcommand("scaling", "query growth across sizes");
  scaling->add_option("--solver", scaling_solver, "exact | indyk | lasvegas")
      ->capture_default_str();
  scaling->add_option("--sizes", scaling_sizes, "comma-separated point counts (>= 3)")
      ->required()
      ->delimiter(',');
  add_family_flags(scaling, scaling_family);
  scaling->add_option("--epsilon", scaling_epsilon, "approximation parameter")
      ->capture_default_str();
  scaling->add_option("--mode", scaling_mode, "practical | faithful")->capture_default_str();
  scaling->add_option("--trials", scaling_trials, "trials per size")->capture_default_str();
  scaling->add_option("--seed", scaling_seed, "root seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(run_family, run_solver, run_epsilon, run_mode, run_trials, run_seed,
                     run_format, run_out, run_sample_constant, run_inner_epsilon, run_budget);
    if (exact->parsed()) return cmd_exact(exact_input);
    if (scaling->parsed())
      return cmd_scaling(scaling_family, scaling_solver, scaling_sizes, scaling_epsilon,
                         scaling_mode, scaling_trials, scaling_seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
