#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "median/metric.hpp"
#include "median/rng.hpp"

namespace median {

// Las Vegas (2+epsilon)-approximate 1-median.
//
// One round: pick a candidate z with the Monte Carlo sampler, measure its
// average distance r, and then try to *prove* z is good enough by pairing up
// the points of a ball around z uniformly at random and checking
//
//   sum of matched-pair distances + sum over points outside the ball of
//   (d(z,x) - 8r)   >=   (1 - 100*sqrt(delta)) * n * r / 2
//
// where delta solves 2 + epsilon = 2 / (1 - 100*sqrt(delta)). The right-hand
// side equals n*r / (2+epsilon) = cost(z) / (2+epsilon), and a successful
// check certifies cost(z) <= (2+epsilon) * cost(y) for every y -- by the
// triangle inequality alone, no matter how z was chosen and no matter what
// radius the ball used. Rounds repeat until a certificate passes; a query
// budget (default n^2) converts the loop into a worst-case-finite algorithm
// by falling back to the exhaustive solver.
enum class Mode { Practical, Faithful };

struct LasVegasConfig {
  double epsilon = 1.0;
  Mode mode = Mode::Practical;

  // Accuracy handed to the inner sampler. The defining construction uses
  // epsilon/1e10, which needs ~1e20/epsilon^2 samples per round: Faithful
  // mode keeps that literal value (and therefore always exhausts the budget
  // and falls back at realistic sizes). Practical mode defaults to
  // epsilon/10. Correctness never depends on this; only the chance that a
  // round's certificate passes does.
  std::optional<double> inner_epsilon;

  // sample_constant for the inner sampler. Deliberately smaller than the
  // standalone sampler default (64): one round must fit inside the n^2 query
  // budget, i.e. n * ceil(c/inner_epsilon^2) queries stay below n^2 at the
  // sizes this tool targets.
  double sample_constant = 4.0;

  std::optional<std::uint64_t> max_query_budget;  // default n^2, must be >= n
  std::uint64_t seed = 0;

  double resolved_inner_epsilon() const;
};

// delta with 2/(1 - 100*sqrt(delta)) = 2 + epsilon, i.e.
// (epsilon / (100*(2+epsilon)))^2. Throws for epsilon <= 0.
double delta_from_epsilon(double epsilon);
// 1/delta evaluated as (100*(2+epsilon)/epsilon)^2; exact in floating point
// for the usual epsilons, which keeps the guard threshold stable.
double inverse_delta(double epsilon);

// Ball radius = radius_scale(...) * n * r. Faithful mode: delta itself.
// Practical mode: max(delta, 8/n), an enlarged ball that agrees with the
// faithful radius asymptotically but keeps the certificate satisfiable at
// bench sizes (the threshold above does not move, so the guarantee is
// unchanged; only the pass probability improves). With a scale >= 8/n every
// outside term d(z,x) - 8r is nonnegative.
double radius_scale(double epsilon, Mode mode, int n);

// Smallest n the round loop accepts; below it the exhaustive solver is
// returned directly (guard path). Faithful: first n >= 1/delta + 4 (so that
// the ball provably keeps all but 1/delta points). Practical: the same rule
// evaluated with the enlarged-radius scale, which works out to n >= 5.
int guard_threshold(double epsilon, Mode mode);

// d(z, x) for every x, self entry 0 without a query: n-1 queries.
std::vector<double> distances_from(const MetricOracle& oracle, PointId z);
// mean of distances_from, i.e. cost(z)/n.
double average_distance(const MetricOracle& oracle, PointId z);

// Open ball {x : d(z,x) < radius}, ascending. z itself appears iff
// radius > 0. The vector overload reuses already-fetched distances.
std::vector<PointId> open_ball(const MetricOracle& oracle, PointId z, double radius);
std::vector<PointId> open_ball(const std::vector<double>& dist_from_z, double radius);

struct BallSnapshot {
  PointId z = 0;
  double r = 0.0;      // average distance from z
  double delta = 0.0;  // solution of the epsilon equation (sets the threshold)
  double radius = 0.0; // actual ball radius used (= scale * n * r)
  std::vector<PointId> members;     // ascending
  std::vector<double> dist_from_z;  // n entries, reused by the certificate
};

// Takes the n-1 distance queries once; ball membership and the certificate
// reuse them. radius_scale defaults to delta (the faithful ball).
BallSnapshot make_snapshot(const MetricOracle& oracle, PointId z, double delta,
                           std::optional<double> radius_scale = std::nullopt);

// floor(|B|/2) disjoint pairs plus at most one leftover, from a Knuth
// shuffle of the members: every perfect matching is equally likely.
struct Pairing {
  std::vector<std::pair<PointId, PointId>> pairs;
  std::optional<PointId> leftover;
};
Pairing random_pairing(const std::vector<PointId>& members, rng::Engine& eng);

struct Certificate {
  double matching_sum = 0.0;  // sum of d over the pairing
  double outside_sum = 0.0;   // sum over non-members of d(z,x) - 8r
  double lhs = 0.0;           // matching_sum + outside_sum
  double rhs = 0.0;           // (1 - 100*sqrt(delta)) * n * r / 2
  bool passed = false;        // plain lhs >= rhs
};

// floor(|B|/2) fresh queries for the matching; everything else comes from
// the snapshot.
Certificate certificate_check(const MetricOracle& oracle,
                              const BallSnapshot& snapshot,
                              const Pairing& pairing);

struct RunReport {
  PointId output = 0;
  int iterations = 0;               // completed round-loop iterations
  std::uint64_t total_queries = 0;  // oracle-counter delta for the whole run
  bool fallback_used = false;       // budget exhausted -> exhaustive solver
  bool guard_used = false;          // n below guard_threshold -> exhaustive solver
  std::optional<Certificate> certificate;  // present iff a round terminated
  std::uint64_t seed = 0;
};

// Test hook: called once per completed round with that round's internals.
struct IterationTrace {
  int iteration = 0;
  BallSnapshot snapshot;
  Pairing pairing;
  Certificate certificate;
};
using IterationObserver = std::function<void(const IterationTrace&)>;

// The full algorithm. Exactly one of certificate / fallback_used /
// guard_used explains every report. Never returns a point worse than
// (2+epsilon) times optimal: certificate terminations are certified, the
// other two paths are exhaustive.
RunReport las_vegas_median(const MetricOracle& oracle, const LasVegasConfig& config,
                           const IterationObserver& observer = {});

}  // namespace median
