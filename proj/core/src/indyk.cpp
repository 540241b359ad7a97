#include "median/indyk.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace median {

double indyk_sample_size(double sample_constant, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("sampler: epsilon must be > 0");
  if (sample_constant <= 0.0) throw std::invalid_argument("sampler: sample_constant must be > 0");
  return std::ceil(sample_constant / (epsilon * epsilon));
}

PointId indyk_median(const MetricOracle& oracle, double epsilon,
                     double sample_constant, rng::Engine& eng) {
  const int n = oracle.n();
  const double m_exact = indyk_sample_size(sample_constant, epsilon);
  if (m_exact > 1e12)
    throw std::invalid_argument("sampler: sample size overflows any sane budget; "
                                "callers must pre-check indyk_sample_size");
  const std::size_t m = static_cast<std::size_t>(m_exact);

  std::vector<PointId> sample(m);
  for (std::size_t i = 0; i < m; ++i)
    sample[i] = static_cast<PointId>(rng::uniform_below(eng, static_cast<std::uint64_t>(n))) + 1;

  PointId best = 1;
  double best_cost = 0.0;
  for (PointId y = 1; y <= n; ++y) {
    double c = 0.0;
    for (PointId x : sample) {
      if (x == y) continue;  // d(y,y) = 0, no query spent
      c += oracle.query(y, x);
    }
    if (y == 1 || c < best_cost) {
      best = y;
      best_cost = c;
    }
  }
  return best;
}

PointId indyk_median(const MetricOracle& oracle, const IndykConfig& config) {
  rng::Engine eng(config.seed);
  return indyk_median(oracle, config.epsilon, config.sample_constant, eng);
}

}  // namespace median
