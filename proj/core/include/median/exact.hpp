#pragma once

#include "median/metric.hpp"

namespace median {

struct CostSummary {
  PointId point = 0;
  double cost = 0.0;
  double optimal_cost = 0.0;
  double ratio = 1.0;  // cost / optimal_cost, defined as 1 when both are 0
};

// cost(y) = sum_x d(y,x). Skips the self term, so exactly n-1 queries.
double cost(const MetricOracle& oracle, PointId y);

// Exhaustive 1-median: argmin_y cost(y), ties to the smallest index.
// n(n-1) queries, the Theta(n^2) baseline everything else is measured against.
CostSummary brute_force_median(const MetricOracle& oracle);

// cost(p) next to the exhaustive optimum.
CostSummary approximation_ratio(const MetricOracle& oracle, PointId p);

}  // namespace median
