#pragma once

#include <cstdint>

#include "median/metric.hpp"
#include "median/rng.hpp"

namespace median {

// Monte Carlo (1+epsilon)-approximate 1-median via uniform sampling:
// draw m = ceil(sample_constant / epsilon^2) reference points with
// replacement, return the point whose summed distance to the sample is
// smallest. Linear-in-n query cost, but the answer is only probably good.
struct IndykConfig {
  double epsilon = 1.0;
  double sample_constant = 64.0;  // calibrated so the success rate beats 1 - 1/e
  std::uint64_t seed = 0;
};

// ceil(sample_constant / epsilon^2), returned as double because extreme
// epsilons push it far beyond any integer type.
double indyk_sample_size(double sample_constant, double epsilon);

// Ties break to the smallest index. At most n*m queries (self terms are
// skipped, so exactly (n-1)*m).
PointId indyk_median(const MetricOracle& oracle, const IndykConfig& config);
PointId indyk_median(const MetricOracle& oracle, double epsilon,
                     double sample_constant, rng::Engine& eng);

}  // namespace median
