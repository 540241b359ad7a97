#pragma once

#include <cstdint>
#include <vector>

#include "median/metric.hpp"

namespace median {

// Instrumentation for the random-pairing sum X = sum of matched-pair
// distances inside a ball B. These are the quantities the certificate's
// success probability rides on, exposed so tests can compare the closed
// forms against brute-force enumeration and live runs. All helpers here are
// test/diagnosis tools: they spend O(|B|^2) queries freely.

struct BallStatistics {
  int ball_size = 0;
  double inner_sum = 0.0;  // sum over ordered pairs (u,v), u != v, of d(u,v)
  double r_prime = 0.0;    // inner_sum / |B|^2, the in-ball average distance
  double cap = 0.0;        // strict upper bound on in-ball distances (2 * ball
                           // radius by the triangle inequality); 0 = unknown
};

BallStatistics mean_inner_distance(const MetricOracle& oracle,
                                   const std::vector<PointId>& members,
                                   double cap = 0.0);

// E[X] = floor(|B|/2) * inner_sum / (|B| * (|B|-1)); 0 when |B| < 2.
double pairing_sum_mean(const BallStatistics& stats);

// Row-major |B| x |B| in-ball distance table (diagonal 0), one query per
// unordered pair.
std::vector<double> ball_distance_table(const MetricOracle& oracle,
                                        const std::vector<PointId>& members);

// Exact first and second moments of X over the uniform pairing:
//   diag  = floor(|B|/2) * sum_{u != v} d(u,v)^2 / (|B|(|B|-1))
//   cross = floor(|B|/2) * (floor(|B|/2)-1)
//           * sum over 4-tuples of distinct u,v,x,y of d(u,v) d(x,y)
//           / (|B|(|B|-1)(|B|-2)(|B|-3)),   0 when |B| < 4
//   E[X^2] = diag + cross,  variance = E[X^2] - mean^2.
// The 4-distinct sum is evaluated in O(|B|^2) through the identity
//   T = S^2 - 4 * sum_u row_u^2 + 2 * sum_{u != v} d(u,v)^2.
struct MomentReport {
  double mean = 0.0;
  double diag = 0.0;
  double cross = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
};

MomentReport pairing_sum_moments(const BallStatistics& stats,
                                 const std::vector<double>& table);

// Worst case of sum_{u,v} d(u,v)^2 subject to the two facts the ball
// guarantees: entries live in [0, cap) with cap = 2*delta*n*r, and the total
// mass is |B|^2 * r_prime. Packing greedily, at most floor(mass/cap) entries
// can sit at the cap plus one remainder, hence
//   bound = floor(|B|/2) / (|B|(|B|-1))
//           * (floor(|B|^2 r_prime / cap) + 1) * cap^2
// which upper-bounds the diag term above for every realizable ball.
double max_square_sum_bound(int ball_size, double r_prime, double delta,
                            double n, double r);

// The extremal assignment itself: floor(mass/cap) entries at the cap, one
// remainder entry, zeros elsewhere. Throws if the mass cannot fit (r_prime >
// cap), which no real ball can produce. objective uses the same
// floor(|B|/2)/(|B|(|B|-1)) scaling as the bound.
struct GreedyAssignment {
  std::uint64_t entries_at_cap = 0;
  double cap = 0.0;
  double remainder = 0.0;
  double objective = 0.0;
};

GreedyAssignment max_square_sum_greedy(int ball_size, double r_prime,
                                       double delta, double n, double r);

}  // namespace median
