#include "median/exact.hpp"

#include <limits>
#include <stdexcept>

namespace median {

double cost(const MetricOracle& oracle, PointId y) {
  double total = 0.0;
  for (PointId x = 1; x <= oracle.n(); ++x) {
    if (x == y) continue;
    total += oracle.query(y, x);
  }
  return total;
}

CostSummary brute_force_median(const MetricOracle& oracle) {
  CostSummary best;
  for (PointId y = 1; y <= oracle.n(); ++y) {
    const double c = cost(oracle, y);
    if (best.point == 0 || c < best.cost) {
      best.point = y;
      best.cost = c;
    }
  }
  best.optimal_cost = best.cost;
  best.ratio = 1.0;
  return best;
}

CostSummary approximation_ratio(const MetricOracle& oracle, PointId p) {
  if (p < 1 || p > oracle.n())
    throw std::out_of_range("approximation_ratio: point outside [1, n]");
  CostSummary s = brute_force_median(oracle);
  s.point = p;
  s.cost = cost(oracle, p);
  // optimal 0 forces cost(p) in [0, 0] too... except it doesn't: a degenerate
  // "metric" can make p strictly worse than an all-zero optimum. Keep ratio
  // finite and meaningful: equal-to-optimal means 1, otherwise infinity.
  if (s.optimal_cost == 0.0) {
    s.ratio = s.cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    s.ratio = s.cost / s.optimal_cost;
  }
  return s;
}

}  // namespace median
