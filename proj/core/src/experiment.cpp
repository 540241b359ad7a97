#include "median/experiment.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unistd.h>

#include <json.hpp>

#include "median/exact.hpp"
#include "median/indyk.hpp"
#include "median/rng.hpp"

namespace median {

namespace {

using ordered_json = nlohmann::ordered_json;

// Lossless, locale-free double formatting for CSV cells.
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (spec.solver != Solver::Exact && spec.epsilon <= 0.0)
    throw std::invalid_argument("experiment: epsilon must be > 0");
  if (spec.family.kind == FamilyKind::Explicit) {
    if (spec.family.path.empty())
      throw std::invalid_argument("experiment: explicit family needs a matrix file");
  } else if (spec.family.n < 1) {
    throw std::invalid_argument("experiment: family needs n >= 1");
  }
}

TrialResult run_trial(const ExperimentSpec& spec, const MetricOracle* explicit_template,
                      int trial) {
  const std::uint64_t base = rng::derive(spec.seed, static_cast<std::uint64_t>(trial));
  MetricFamily family = spec.family;
  family.seed = rng::derive(base, 0);
  MetricOracle oracle = explicit_template != nullptr
                            ? *explicit_template
                            : generate_metric(family);

  TrialResult result;
  result.trial = trial;
  result.seed = rng::derive(base, 1);

  const std::uint64_t before = oracle.query_count();
  std::optional<CostSummary> exact_summary;
  switch (spec.solver) {
    case Solver::Exact: {
      exact_summary = brute_force_median(oracle);
      result.output = exact_summary->point;
      break;
    }
    case Solver::Indyk: {
      IndykConfig config;
      config.epsilon = spec.epsilon;
      if (spec.sample_constant) config.sample_constant = *spec.sample_constant;
      config.seed = result.seed;
      result.output = indyk_median(oracle, config);
      break;
    }
    case Solver::LasVegas: {
      LasVegasConfig config;
      config.epsilon = spec.epsilon;
      config.mode = spec.mode;
      config.inner_epsilon = spec.inner_epsilon;
      if (spec.sample_constant) config.sample_constant = *spec.sample_constant;
      config.max_query_budget = spec.max_query_budget;
      config.seed = result.seed;
      const RunReport report = las_vegas_median(oracle, config);
      result.output = report.output;
      result.iterations = report.iterations;
      result.fallback_used = report.fallback_used;
      result.guard_used = report.guard_used;
      result.certificate = report.certificate;
      break;
    }
  }
  result.queries = oracle.query_count() - before;

  // Exhaustive recheck, outside the measured query count.
  if (oracle.n() <= ratio_check_cap()) {
    if (exact_summary) {
      result.cost = exact_summary->cost;
      result.optimal_cost = exact_summary->optimal_cost;
      result.ratio = exact_summary->ratio;
    } else {
      const CostSummary s = approximation_ratio(oracle, result.output);
      result.cost = s.cost;
      result.optimal_cost = s.optimal_cost;
      result.ratio = s.ratio;
    }
  }
  return result;
}

ordered_json family_to_json(const MetricFamily& f) {
  return ordered_json{{"kind", family_name(f.kind)}, {"n", f.n},     {"dim", f.dim},
                      {"clusters", f.clusters},      {"spread", f.spread},
                      {"path", f.path},              {"seed", f.seed}};
}

MetricFamily family_from_json(const ordered_json& j) {
  MetricFamily f;
  f.kind = family_from_name(j.at("kind").get<std::string>());
  f.n = j.at("n").get<int>();
  f.dim = j.at("dim").get<int>();
  f.clusters = j.at("clusters").get<int>();
  f.spread = j.at("spread").get<double>();
  f.path = j.at("path").get<std::string>();
  f.seed = j.at("seed").get<std::uint64_t>();
  return f;
}

template <typename T>
ordered_json opt_to_json(const std::optional<T>& v) {
  if (v) return ordered_json(*v);
  return ordered_json(nullptr);
}

template <typename T>
std::optional<T> opt_from_json(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

ordered_json cert_to_json(const Certificate& c) {
  return ordered_json{{"matching_sum", c.matching_sum},
                      {"outside_sum", c.outside_sum},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"passed", c.passed}};
}

Certificate cert_from_json(const ordered_json& j) {
  Certificate c;
  c.matching_sum = j.at("matching_sum").get<double>();
  c.outside_sum = j.at("outside_sum").get<double>();
  c.lhs = j.at("lhs").get<double>();
  c.rhs = j.at("rhs").get<double>();
  c.passed = j.at("passed").get<bool>();
  return c;
}

ordered_json spec_to_json(const ExperimentSpec& spec) {
  return ordered_json{{"solver", solver_name(spec.solver)},
                      {"family", family_to_json(spec.family)},
                      {"epsilon", spec.epsilon},
                      {"mode", mode_name(spec.mode)},
                      {"trials", spec.trials},
                      {"seed", spec.seed},
                      {"sample_constant", opt_to_json(spec.sample_constant)},
                      {"inner_epsilon", opt_to_json(spec.inner_epsilon)},
                      {"max_query_budget", opt_to_json(spec.max_query_budget)}};
}

ExperimentSpec spec_from_json(const ordered_json& j) {
  ExperimentSpec spec;
  spec.solver = solver_from_name(j.at("solver").get<std::string>());
  spec.family = family_from_json(j.at("family"));
  spec.epsilon = j.at("epsilon").get<double>();
  spec.mode = mode_from_name(j.at("mode").get<std::string>());
  spec.trials = j.at("trials").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.sample_constant = opt_from_json<double>(j.at("sample_constant"));
  spec.inner_epsilon = opt_from_json<double>(j.at("inner_epsilon"));
  spec.max_query_budget = opt_from_json<std::uint64_t>(j.at("max_query_budget"));
  return spec;
}

ordered_json trial_to_json(const TrialResult& t) {
  ordered_json j{{"trial", t.trial},
                 {"seed", t.seed},
                 {"output", t.output},
                 {"queries", t.queries},
                 {"iterations", t.iterations},
                 {"fallback_used", t.fallback_used},
                 {"guard_used", t.guard_used}};
  j["certificate"] = t.certificate ? cert_to_json(*t.certificate) : ordered_json(nullptr);
  j["cost"] = opt_to_json(t.cost);
  j["optimal_cost"] = opt_to_json(t.optimal_cost);
  j["ratio"] = opt_to_json(t.ratio);
  return j;
}

TrialResult trial_from_json(const ordered_json& j) {
  TrialResult t;
  t.trial = j.at("trial").get<int>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.output = j.at("output").get<PointId>();
  t.queries = j.at("queries").get<std::uint64_t>();
  t.iterations = j.at("iterations").get<int>();
  t.fallback_used = j.at("fallback_used").get<bool>();
  t.guard_used = j.at("guard_used").get<bool>();
  if (!j.at("certificate").is_null()) t.certificate = cert_from_json(j.at("certificate"));
  t.cost = opt_from_json<double>(j.at("cost"));
  t.optimal_cost = opt_from_json<double>(j.at("optimal_cost"));
  t.ratio = opt_from_json<double>(j.at("ratio"));
  return t;
}

ordered_json summary_to_json(const Summary& s) {
  return ordered_json{{"trials", s.trials},
                      {"ratio_checked", s.ratio_checked},
                      {"mean_ratio", opt_to_json(s.mean_ratio)},
                      {"max_ratio", opt_to_json(s.max_ratio)},
                      {"mean_iterations", s.mean_iterations},
                      {"mean_queries", s.mean_queries},
                      {"fraction_fallback", s.fraction_fallback},
                      {"fraction_guard", s.fraction_guard},
                      {"wall_time_seconds", s.wall_time_seconds}};
}

Summary summary_from_json(const ordered_json& j) {
  Summary s;
  s.trials = j.at("trials").get<int>();
  s.ratio_checked = j.at("ratio_checked").get<int>();
  s.mean_ratio = opt_from_json<double>(j.at("mean_ratio"));
  s.max_ratio = opt_from_json<double>(j.at("max_ratio"));
  s.mean_iterations = j.at("mean_iterations").get<double>();
  s.mean_queries = j.at("mean_queries").get<double>();
  s.fraction_fallback = j.at("fraction_fallback").get<double>();
  s.fraction_guard = j.at("fraction_guard").get<double>();
  s.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  return s;
}

void write_csv(const AggregateReport& report, std::ostream& out) {
  out << "trial,seed,solver,family,n,epsilon,mode,output,queries,iterations,"
         "fallback_used,guard_used,cert_passed,cert_lhs,cert_rhs,cost,optimal_cost,ratio\n";
  for (const TrialResult& t : report.trials) {
    out << t.trial << ',' << t.seed << ',' << solver_name(report.spec.solver) << ','
        << family_name(report.spec.family.kind) << ',' << report.spec.family.n << ','
        << fmt_double(report.spec.epsilon) << ',' << mode_name(report.spec.mode) << ','
        << t.output << ',' << t.queries << ',' << t.iterations << ','
        << (t.fallback_used ? 1 : 0) << ',' << (t.guard_used ? 1 : 0) << ',';
    if (t.certificate)
      out << (t.certificate->passed ? 1 : 0) << ',' << fmt_double(t.certificate->lhs) << ','
          << fmt_double(t.certificate->rhs) << ',';
    else
      out << ",,,";
    out << (t.cost ? fmt_double(*t.cost) : "") << ','
        << (t.optimal_cost ? fmt_double(*t.optimal_cost) : "") << ','
        << (t.ratio ? fmt_double(*t.ratio) : "") << '\n';
  }
}

}  // namespace

int ratio_check_cap() {
  if (const char* env = std::getenv("MEDIAN_RATIO_CHECK_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(v);
  }
  return 2000;
}

Summary summarize(const ExperimentSpec& spec, const std::vector<TrialResult>& trials,
                  double wall_time_seconds) {
  Summary s;
  s.trials = static_cast<int>(trials.size());
  s.wall_time_seconds = wall_time_seconds;
  double ratio_sum = 0.0;
  for (const TrialResult& t : trials) {
    s.mean_iterations += t.iterations;
    s.mean_queries += static_cast<double>(t.queries);
    s.fraction_fallback += t.fallback_used ? 1.0 : 0.0;
    s.fraction_guard += t.guard_used ? 1.0 : 0.0;
    if (t.ratio) {
      ++s.ratio_checked;
      ratio_sum += *t.ratio;
      s.max_ratio = std::max(s.max_ratio.value_or(0.0), *t.ratio);
      // The (2+epsilon) bound is unconditional for the Las Vegas solver; a
      // measured violation means the implementation is broken, so fail loudly
      // rather than average it away. Tiny slack for float summation only.
      if (spec.solver == Solver::LasVegas &&
          *t.ratio > (2.0 + spec.epsilon) * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "approximation guarantee violated: trial " << t.trial << " ratio "
            << *t.ratio << " > 2 + epsilon = " << 2.0 + spec.epsilon;
        throw std::logic_error(msg.str());
      }
    }
  }
  if (!trials.empty()) {
    s.mean_iterations /= static_cast<double>(trials.size());
    s.mean_queries /= static_cast<double>(trials.size());
    s.fraction_fallback /= static_cast<double>(trials.size());
    s.fraction_guard /= static_cast<double>(trials.size());
  }
  if (s.ratio_checked > 0) s.mean_ratio = ratio_sum / s.ratio_checked;
  return s;
}

AggregateReport run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);

  // Explicit matrices are loaded once and copied per trial; generated
  // families are materialized per trial with a derived seed.
  std::optional<MetricOracle> explicit_template;
  if (spec.family.kind == FamilyKind::Explicit)
    explicit_template = generate_metric(spec.family);

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<TrialResult> trials(static_cast<std::size_t>(spec.trials));

  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::min<int>(spec.trials, hw > 0 ? static_cast<int>(hw) : 1);
  if (workers <= 1) {
    for (int i = 0; i < spec.trials; ++i)
      trials[static_cast<std::size_t>(i)] =
          run_trial(spec, explicit_template ? &*explicit_template : nullptr, i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      try {
        for (int i = next.fetch_add(1); i < spec.trials; i = next.fetch_add(1))
          trials[static_cast<std::size_t>(i)] =
              run_trial(spec, explicit_template ? &*explicit_template : nullptr, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  AggregateReport report;
  report.spec = spec;
  report.trials = std::move(trials);
  report.summary = summarize(spec, report.trials, wall);
  return report;
}

void write_report(const AggregateReport& report, std::ostream& out, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    write_csv(report, out);
    return;
  }
  ordered_json j{{"spec", spec_to_json(report.spec)},
                 {"trials", ordered_json::array()},
                 {"summary", summary_to_json(report.summary)}};
  for (const TrialResult& t : report.trials) j["trials"].push_back(trial_to_json(t));
  out << j.dump(2) << '\n';
}

void write_report_file(const AggregateReport& report, const std::string& path,
                       ReportFormat format) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write report file: " + path);
    write_report(report, out, format);
    if (!out) throw std::runtime_error("short write on report file: " + path);
  }
  fs::rename(tmp, target);  // atomic on POSIX: readers see old or new, never half
}

AggregateReport read_json_report(std::istream& in) {
  const ordered_json j = ordered_json::parse(in);
  AggregateReport report;
  report.spec = spec_from_json(j.at("spec"));
  for (const ordered_json& t : j.at("trials")) report.trials.push_back(trial_from_json(t));
  report.summary = summary_from_json(j.at("summary"));
  return report;
}

AggregateReport read_json_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open report file: " + path);
  return read_json_report(in);
}

ScalingReport query_scaling_report(const std::vector<ExperimentSpec>& specs) {
  std::vector<int> sizes;
  for (const ExperimentSpec& spec : specs) {
    if (spec.solver != specs.front().solver)
      throw std::invalid_argument("query_scaling_report: all specs must share one solver");
    for (int seen : sizes)
      if (seen == spec.family.n)
        throw std::invalid_argument("query_scaling_report: duplicate size n = " +
                                    std::to_string(spec.family.n));
    sizes.push_back(spec.family.n);
  }
  if (sizes.size() < 3)
    throw std::invalid_argument("query_scaling_report: need at least 3 distinct sizes "
                                "to fit a slope");

  ScalingReport report;
  for (const ExperimentSpec& spec : specs) {
    const AggregateReport agg = run_experiment(spec);
    ScalingRow row;
    row.n = spec.family.n;
    row.mean_queries = agg.summary.mean_queries;
    const double n = static_cast<double>(row.n);
    row.queries_per_n = row.mean_queries / n;
    row.queries_per_n2 = row.mean_queries / (n * n);
    if (!(row.mean_queries > 0.0))
      throw std::invalid_argument("query_scaling_report: zero mean queries at n = " +
                                  std::to_string(row.n) + "; size too small to fit");
    report.rows.push_back(row);
  }

  // Least-squares slope of log(queries) against log(n).
  double sx = 0.0, sy = 0.0;
  for (const ScalingRow& row : report.rows) {
    sx += std::log(static_cast<double>(row.n));
    sy += std::log(row.mean_queries);
  }
  const double mx = sx / static_cast<double>(report.rows.size());
  const double my = sy / static_cast<double>(report.rows.size());
  double sxx = 0.0, sxy = 0.0;
  for (const ScalingRow& row : report.rows) {
    const double dx = std::log(static_cast<double>(row.n)) - mx;
    const double dy = std::log(row.mean_queries) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  report.loglog_slope = sxy / sxx;
  return report;
}

void write_scaling_table(const ScalingReport& report, std::ostream& out) {
  out << "n,mean_queries,queries_per_n,queries_per_n2\n";
  for (const ScalingRow& row : report.rows)
    out << row.n << ',' << fmt_double(row.mean_queries) << ','
        << fmt_double(row.queries_per_n) << ',' << fmt_double(row.queries_per_n2) << '\n';
  out << "loglog_slope," << fmt_double(report.loglog_slope) << ",,\n";
}

const char* solver_name(Solver solver) {
  switch (solver) {
    case Solver::Exact: return "exact";
    case Solver::Indyk: return "indyk";
    case Solver::LasVegas: return "lasvegas";
  }
  return "?";
}

Solver solver_from_name(const std::string& name) {
  if (name == "exact") return Solver::Exact;
  if (name == "indyk") return Solver::Indyk;
  if (name == "lasvegas") return Solver::LasVegas;
  throw std::invalid_argument("unknown solver: " + name);
}

const char* mode_name(Mode mode) {
  return mode == Mode::Faithful ? "faithful" : "practical";
}

Mode mode_from_name(const std::string& name) {
  if (name == "faithful") return Mode::Faithful;
  if (name == "practical") return Mode::Practical;
  throw std::invalid_argument("unknown mode: " + name);
}

}  // namespace median
