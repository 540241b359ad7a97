#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "median/families.hpp"
#include "median/lasvegas.hpp"

namespace median {

// Batch experiment runner behind the CLI. Each trial gets its own freshly
// generated oracle and a seed derived from (spec.seed, trial index), so a
// spec is a complete, reproducible description of an experiment: identical
// spec + seed produce byte-identical JSON (wall time aside).

enum class Solver { Exact, Indyk, LasVegas };

enum class ReportFormat { Json, Csv };

struct ExperimentSpec {
  Solver solver = Solver::LasVegas;
  MetricFamily family;
  double epsilon = 1.0;
  Mode mode = Mode::Practical;
  int trials = 1;
  std::uint64_t seed = 0;
  // Optional solver knobs; defaults follow the solver configs.
  std::optional<double> sample_constant;
  std::optional<double> inner_epsilon;
  std::optional<std::uint64_t> max_query_budget;
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  PointId output = 0;
  std::uint64_t queries = 0;
  // Las Vegas bookkeeping; zero/false/absent for the other solvers.
  int iterations = 0;
  bool fallback_used = false;
  bool guard_used = false;
  std::optional<Certificate> certificate;
  // Filled when n is within the ratio-check cap (exhaustive recheck).
  std::optional<double> cost;
  std::optional<double> optimal_cost;
  std::optional<double> ratio;
};

struct Summary {
  int trials = 0;
  int ratio_checked = 0;
  std::optional<double> mean_ratio;
  std::optional<double> max_ratio;
  double mean_iterations = 0.0;
  double mean_queries = 0.0;
  double fraction_fallback = 0.0;
  double fraction_guard = 0.0;
  double wall_time_seconds = 0.0;
};

struct AggregateReport {
  ExperimentSpec spec;
  std::vector<TrialResult> trials;
  Summary summary;
};

// Ratios are rechecked exhaustively only up to this n (brute force is n^2).
// Default 2000, overridable via the MEDIAN_RATIO_CHECK_CAP environment
// variable.
int ratio_check_cap();

// Runs trials (in parallel when hardware allows; results are ordered by
// trial index either way) and aggregates. Throws std::invalid_argument on
// unusable specs and std::logic_error if a Las Vegas trial's rechecked ratio
// ever exceeds 2 + epsilon -- that bound is unconditional, so a violation is
// a defect, not a statistic.
AggregateReport run_experiment(const ExperimentSpec& spec);

// Aggregation alone, exposed for tests of the hard (2+epsilon) assertion.
Summary summarize(const ExperimentSpec& spec, const std::vector<TrialResult>& trials,
                  double wall_time_seconds);

void write_report(const AggregateReport& report, std::ostream& out, ReportFormat format);
// Atomic: writes a sibling temp file, then renames over the target.
void write_report_file(const AggregateReport& report, const std::string& path,
                       ReportFormat format);
AggregateReport read_json_report(std::istream& in);
AggregateReport read_json_report_file(const std::string& path);

// Query growth across sizes: one experiment per spec (all must share the
// solver), mean queries per size, and the least-squares slope of
// log(mean queries) against log(n). Requires >= 3 distinct sizes.
struct ScalingRow {
  int n = 0;
  double mean_queries = 0.0;
  double queries_per_n = 0.0;
  double queries_per_n2 = 0.0;
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double loglog_slope = 0.0;
};

ScalingReport query_scaling_report(const std::vector<ExperimentSpec>& specs);
void write_scaling_table(const ScalingReport& report, std::ostream& out);

const char* solver_name(Solver solver);
Solver solver_from_name(const std::string& name);
const char* mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

}  // namespace median
