#include "median/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace median {

BallStatistics mean_inner_distance(const MetricOracle& oracle,
                                   const std::vector<PointId>& members, double cap) {
  BallStatistics stats;
  stats.ball_size = static_cast<int>(members.size());
  stats.cap = cap;
  // Ordered-pair sum with a symmetric oracle: query each unordered pair once
  // and double it.
  double unordered = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      unordered += oracle.query(members[i], members[j]);
  stats.inner_sum = 2.0 * unordered;
  const double b = static_cast<double>(stats.ball_size);
  stats.r_prime = stats.ball_size == 0 ? 0.0 : stats.inner_sum / (b * b);
  return stats;
}

double pairing_sum_mean(const BallStatistics& stats) {
  const int b = stats.ball_size;
  if (b < 2) return 0.0;
  const double pairs = std::floor(b / 2.0);
  return pairs * stats.inner_sum / (static_cast<double>(b) * (b - 1));
}

std::vector<double> ball_distance_table(const MetricOracle& oracle,
                                        const std::vector<PointId>& members) {
  const std::size_t b = members.size();
  std::vector<double> table(b * b, 0.0);
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = i + 1; j < b; ++j) {
      const double d = oracle.query(members[i], members[j]);
      table[i * b + j] = d;
      table[j * b + i] = d;
    }
  }
  return table;
}

MomentReport pairing_sum_moments(const BallStatistics& stats,
                                 const std::vector<double>& table) {
  const int b = stats.ball_size;
  if (table.size() != static_cast<std::size_t>(b) * static_cast<std::size_t>(b))
    throw std::invalid_argument("pairing_sum_moments: table size != ball_size^2");

  MomentReport report;
  report.mean = pairing_sum_mean(stats);
  if (b < 2) return report;

  const std::size_t bs = static_cast<std::size_t>(b);
  double sq = 0.0;  // sum over ordered pairs of d^2
  std::vector<double> row(bs, 0.0);
  for (std::size_t u = 0; u < bs; ++u) {
    for (std::size_t v = 0; v < bs; ++v) {
      const double d = table[u * bs + v];
      sq += d * d;
      row[u] += d;
    }
  }
  double row_sq = 0.0;
  for (double r : row) row_sq += r * r;

  const double pairs = std::floor(b / 2.0);
  const double bd = static_cast<double>(b);
  report.diag = pairs * sq / (bd * (bd - 1.0));

  if (b >= 4 && pairs >= 2.0) {
    // Sum over 4-tuples of pairwise-distinct indices of d(u,v)*d(x,y):
    // expand (sum d)^2 and subtract the colliding tuples. With a symmetric,
    // zero-diagonal table that is S^2 - 4*sum_u row_u^2 + 2*sum d^2.
    const double s = stats.inner_sum;
    const double distinct4 = s * s - 4.0 * row_sq + 2.0 * sq;
    report.cross = pairs * (pairs - 1.0) * distinct4 /
                   (bd * (bd - 1.0) * (bd - 2.0) * (bd - 3.0));
  }

  report.second_moment = report.diag + report.cross;
  report.variance = report.second_moment - report.mean * report.mean;
  return report;
}

namespace {

double scaling_factor(int ball_size) {
  const double b = static_cast<double>(ball_size);
  return std::floor(b / 2.0) / (b * (b - 1.0));
}

void check_mss_arguments(int ball_size, double r_prime, double cap) {
  if (ball_size < 2)
    throw std::invalid_argument("max square sum: ball_size must be >= 2");
  if (r_prime < 0.0)
    throw std::invalid_argument("max square sum: r_prime must be >= 0");
  if (!(cap > 0.0))
    throw std::invalid_argument("max square sum: cap 2*delta*n*r must be > 0");
}

}  // namespace

double max_square_sum_bound(int ball_size, double r_prime, double delta,
                            double n, double r) {
  const double cap = 2.0 * delta * n * r;
  check_mss_arguments(ball_size, r_prime, cap);
  const double b = static_cast<double>(ball_size);
  const double mass = b * b * r_prime;
  return scaling_factor(ball_size) * (std::floor(mass / cap) + 1.0) * cap * cap;
}

GreedyAssignment max_square_sum_greedy(int ball_size, double r_prime,
                                       double delta, double n, double r) {
  const double cap = 2.0 * delta * n * r;
  check_mss_arguments(ball_size, r_prime, cap);
  if (r_prime > cap)
    throw std::invalid_argument("max square sum: infeasible, average distance "
                                "r_prime exceeds the per-entry cap");
  const double b = static_cast<double>(ball_size);
  const double mass = b * b * r_prime;

  GreedyAssignment g;
  g.cap = cap;
  const double full = std::floor(mass / cap);
  g.entries_at_cap = static_cast<std::uint64_t>(full);
  g.remainder = mass - full * cap;
  if (g.remainder < 0.0) g.remainder = 0.0;  // float guard
  g.objective = scaling_factor(ball_size) * (full * cap * cap + g.remainder * g.remainder);
  return g;
}

}  // namespace median
