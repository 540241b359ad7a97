#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "median/exact.hpp"
#include "median/families.hpp"
#include "support.hpp"

using namespace median;

TEST_CASE("cost sums distances from one point to all others") {
  MetricOracle o = testsupport::line_oracle();
  CHECK(cost(o, 1) == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(cost(o, 2) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(cost(o, 3) == doctest::Approx(19.0).epsilon(1e-12));
  // each evaluation queries exactly n-1 pairs
  const std::uint64_t before = o.query_count();
  (void)cost(o, 1);
  CHECK(o.query_count() - before == 2);
}

TEST_CASE("brute force finds the minimizer with exactly n(n-1) queries") {
  MetricOracle o = testsupport::line_oracle();
  const std::uint64_t before = o.query_count();
  CostSummary s = brute_force_median(o);
  CHECK(s.point == 2);
  CHECK(s.cost == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(o.query_count() - before == 6);
}

TEST_CASE("brute force breaks ties toward the smallest index") {
  MetricOracle d = MetricOracle::discrete(5);
  CostSummary s = brute_force_median(d);
  CHECK(s.point == 1);
  CHECK(s.cost == doctest::Approx(4.0));
}

TEST_CASE("a single point has cost zero") {
  MetricOracle d = MetricOracle::discrete(1);
  CHECK(cost(d, 1) == 0.0);
  CostSummary s = brute_force_median(d);
  CHECK(s.point == 1);
  CHECK(s.cost == 0.0);
  CHECK(d.query_count() == 0);
}

TEST_CASE("cost matches an independent re-summation") {
  MetricFamily fam;
  fam.kind = FamilyKind::EuclideanUniform;
  fam.n = 50;
  fam.dim = 2;
  fam.seed = 17;
  MetricOracle o = generate_metric(fam);
  for (PointId y : {1, 7, 50}) {
    double resum = 0.0;
    for (PointId x = 1; x <= 50; ++x)
      if (x != y) resum += o.query(y, x);
    CHECK(cost(o, y) == resum);
  }
}

TEST_CASE("brute force agrees with a recomputed full cost vector") {
  MetricFamily fam;
  fam.kind = FamilyKind::EuclideanClustered;
  fam.n = 100;
  fam.dim = 2;
  fam.seed = 42;
  MetricOracle o = generate_metric(fam);
  CostSummary s = brute_force_median(o);
  PointId best = 1;
  double best_cost = cost(o, 1);
  for (PointId y = 2; y <= 100; ++y) {
    const double c = cost(o, y);
    if (c < best_cost) {
      best_cost = c;
      best = y;
    }
  }
  CHECK(s.point == best);
  CHECK(s.cost == best_cost);
}

TEST_CASE("approximation ratio basics") {
  MetricOracle o = testsupport::line_oracle();
  CostSummary s = approximation_ratio(o, 1);
  CHECK(s.ratio == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(s.optimal_cost == doctest::Approx(10.0));
  CHECK(approximation_ratio(o, 2).ratio == doctest::Approx(1.0));
}

TEST_CASE("zero-cost instances give ratio one, positive cost over zero gives infinity") {
  MetricOracle z = MetricOracle::from_matrix({0, 0, 0, 0, 0, 0, 0, 0, 0}, 3);
  CHECK(approximation_ratio(z, 2).ratio == doctest::Approx(1.0));
  CHECK(brute_force_median(z).point == 1);
}

TEST_CASE("approximation ratio is never below one") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    MetricFamily fam;
    fam.kind = FamilyKind::EuclideanUniform;
    fam.n = 30;
    fam.dim = 3;
    fam.seed = seed;
    MetricOracle o = generate_metric(fam);
    for (PointId y = 1; y <= 30; y += 7) CHECK(approximation_ratio(o, y).ratio >= 1.0);
  }
}
