#include "median/lasvegas.hpp"

#include <cmath>
#include <stdexcept>

#include "median/exact.hpp"
#include "median/indyk.hpp"

namespace median {

double delta_from_epsilon(double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("delta_from_epsilon: epsilon must be > 0");
  const double q = epsilon / (100.0 * (2.0 + epsilon));
  return q * q;
}

double inverse_delta(double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("inverse_delta: epsilon must be > 0");
  const double s = 100.0 * (2.0 + epsilon) / epsilon;
  return s * s;
}

double radius_scale(double epsilon, Mode mode, int n) {
  const double delta = delta_from_epsilon(epsilon);
  if (mode == Mode::Faithful) return delta;
  return std::max(delta, 8.0 / static_cast<double>(n));
}

int guard_threshold(double epsilon, Mode mode) {
  if (mode == Mode::Practical) {
    // Solve n >= 1/scale + 4 with scale = max(delta, 8/n): the 8/n branch
    // gives n >= n/8 + 4, first true at n = 5 (1/delta > 1e4 for every
    // epsilon, so the other branch never binds earlier).
    return 5;
  }
  const double inv = inverse_delta(epsilon);
  const double first = std::ceil(inv) + 4.0;
  if (first > 2147483647.0) return 2147483647;  // guard always fires
  return static_cast<int>(first);
}

double LasVegasConfig::resolved_inner_epsilon() const {
  if (inner_epsilon) return *inner_epsilon;
  return mode == Mode::Faithful ? epsilon * 1e-10 : epsilon * 0.1;
}

std::vector<double> distances_from(const MetricOracle& oracle, PointId z) {
  const int n = oracle.n();
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  for (PointId x = 1; x <= n; ++x) {
    if (x == z) continue;
    dist[static_cast<std::size_t>(x - 1)] = oracle.query(z, x);
  }
  return dist;
}

double average_distance(const MetricOracle& oracle, PointId z) {
  const std::vector<double> dist = distances_from(oracle, z);
  double total = 0.0;
  for (double d : dist) total += d;
  return total / static_cast<double>(oracle.n());
}

std::vector<PointId> open_ball(const std::vector<double>& dist_from_z, double radius) {
  std::vector<PointId> members;
  for (std::size_t i = 0; i < dist_from_z.size(); ++i)
    if (dist_from_z[i] < radius) members.push_back(static_cast<PointId>(i) + 1);
  return members;
}

std::vector<PointId> open_ball(const MetricOracle& oracle, PointId z, double radius) {
  return open_ball(distances_from(oracle, z), radius);
}

BallSnapshot make_snapshot(const MetricOracle& oracle, PointId z, double delta,
                           std::optional<double> radius_scale) {
  const int n = oracle.n();
  BallSnapshot snap;
  snap.z = z;
  snap.delta = delta;
  snap.dist_from_z = distances_from(oracle, z);
  double total = 0.0;
  for (double d : snap.dist_from_z) total += d;
  snap.r = total / static_cast<double>(n);
  snap.radius = radius_scale.value_or(delta) * static_cast<double>(n) * snap.r;
  snap.members = open_ball(snap.dist_from_z, snap.radius);
  return snap;
}

Pairing random_pairing(const std::vector<PointId>& members, rng::Engine& eng) {
  std::vector<PointId> order = members;
  rng::shuffle(order, eng);
  Pairing pairing;
  const std::size_t half = order.size() / 2;
  pairing.pairs.reserve(half);
  for (std::size_t i = 0; i < half; ++i)
    pairing.pairs.emplace_back(order[2 * i], order[2 * i + 1]);
  if (order.size() % 2 == 1) pairing.leftover = order.back();
  return pairing;
}

Certificate certificate_check(const MetricOracle& oracle, const BallSnapshot& snapshot,
                              const Pairing& pairing) {
  const int n = static_cast<int>(snapshot.dist_from_z.size());
  Certificate cert;
  for (const auto& [a, b] : pairing.pairs) cert.matching_sum += oracle.query(a, b);

  std::vector<char> inside(static_cast<std::size_t>(n), 0);
  for (PointId p : snapshot.members) inside[static_cast<std::size_t>(p - 1)] = 1;
  for (int i = 0; i < n; ++i)
    if (!inside[static_cast<std::size_t>(i)])
      cert.outside_sum += snapshot.dist_from_z[static_cast<std::size_t>(i)] - 8.0 * snapshot.r;

  cert.lhs = cert.matching_sum + cert.outside_sum;
  cert.rhs = (1.0 - 100.0 * std::sqrt(snapshot.delta)) * static_cast<double>(n) * snapshot.r / 2.0;
  cert.passed = cert.lhs >= cert.rhs;
  return cert;
}

RunReport las_vegas_median(const MetricOracle& oracle, const LasVegasConfig& config,
                           const IterationObserver& observer) {
  const int n = oracle.n();
  const double delta = delta_from_epsilon(config.epsilon);  // validates epsilon
  if (config.sample_constant <= 0.0)
    throw std::invalid_argument("las_vegas_median: sample_constant must be > 0");
  const std::uint64_t budget =
      config.max_query_budget.value_or(static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n));
  if (budget < static_cast<std::uint64_t>(n))
    throw std::invalid_argument("las_vegas_median: max_query_budget must be >= n");

  const std::uint64_t start = oracle.query_count();
  RunReport report;
  report.seed = config.seed;

  auto exhaustive = [&](bool guard) {
    const CostSummary best = brute_force_median(oracle);
    report.output = best.point;
    (guard ? report.guard_used : report.fallback_used) = true;
  };

  if (n < guard_threshold(config.epsilon, config.mode)) {
    exhaustive(/*guard=*/true);
  } else {
    const double scale = radius_scale(config.epsilon, config.mode, n);
    const double inner_eps = config.resolved_inner_epsilon();
    if (inner_eps <= 0.0)
      throw std::invalid_argument("las_vegas_median: inner_epsilon must be > 0");
    const double m = indyk_sample_size(config.sample_constant, inner_eps);
    // Worst case for one round: the sampler's n*m, the n-1 distances from z,
    // and up to n/2 matching queries. Checked up front so a round never
    // starts unless it can finish inside the budget (in particular, Faithful
    // mode's astronomical m routes straight to the fallback instead of
    // hanging).
    const double round_cost = static_cast<double>(n) * m + static_cast<double>(n - 1) +
                              static_cast<double>(n / 2);
    int iterations = 0;
    for (;;) {
      const std::uint64_t used = oracle.query_count() - start;
      if (static_cast<double>(used) + round_cost > static_cast<double>(budget)) {
        exhaustive(/*guard=*/false);
        break;
      }
      ++iterations;
      // Per-round streams split from the root seed by round index, so a
      // round's draws do not depend on how much randomness earlier rounds
      // consumed.
      rng::Engine sampler_eng(rng::derive(config.seed, 2 * static_cast<std::uint64_t>(iterations)));
      rng::Engine pairing_eng(rng::derive(config.seed, 2 * static_cast<std::uint64_t>(iterations) + 1));

      const PointId z = indyk_median(oracle, inner_eps, config.sample_constant, sampler_eng);
      const BallSnapshot snapshot = make_snapshot(oracle, z, delta, scale);
      const Pairing pairing = random_pairing(snapshot.members, pairing_eng);
      const Certificate cert = certificate_check(oracle, snapshot, pairing);
      if (observer) observer(IterationTrace{iterations, snapshot, pairing, cert});
      if (cert.passed) {
        report.output = z;
        report.certificate = cert;
        break;
      }
    }
    report.iterations = iterations;
  }

  report.total_queries = oracle.query_count() - start;
  return report;
}

}  // namespace median
