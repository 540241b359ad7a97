#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "median/exact.hpp"
#include "median/families.hpp"
#include "median/indyk.hpp"
#include "median/rng.hpp"
#include "support.hpp"

using namespace median;

TEST_CASE("sample size is ceil(c / epsilon^2)") {
  CHECK(indyk_sample_size(64.0, 1.0) == 64.0);
  CHECK(indyk_sample_size(64.0, 0.5) == 256.0);
  CHECK(indyk_sample_size(64.0, 2.0) == 16.0);
  CHECK(indyk_sample_size(4.0, 0.1) == 400.0);
  CHECK(indyk_sample_size(5.0, 3.0) == 1.0);  // ceil(0.55...) rounds up
}

TEST_CASE("invalid parameters are rejected") {
  MetricOracle d = MetricOracle::discrete(10);
  IndykConfig cfg;
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(indyk_median(d, cfg), std::invalid_argument);
  cfg.epsilon = 1.0;
  cfg.sample_constant = -1.0;
  CHECK_THROWS_AS(indyk_median(d, cfg), std::invalid_argument);
  cfg.sample_constant = 64.0;
  cfg.epsilon = 1e-10;  // sample size overflows any sane budget
  CHECK_THROWS_AS(indyk_median(d, cfg), std::invalid_argument);
}

TEST_CASE("single point returns immediately") {
  MetricOracle d = MetricOracle::discrete(1);
  IndykConfig cfg;
  cfg.seed = 3;
  CHECK(indyk_median(d, cfg) == 1);
  CHECK(d.query_count() == 0);
}

TEST_CASE("query count is exactly (n-1) * m") {
  MetricOracle d = MetricOracle::discrete(7);
  IndykConfig cfg;
  cfg.epsilon = 1.0;
  cfg.sample_constant = 8.0;  // m = 8
  cfg.seed = 11;
  (void)indyk_median(d, cfg);
  CHECK(d.query_count() == 6 * 8);

  MetricFamily fam;
  fam.kind = FamilyKind::EuclideanUniform;
  fam.n = 20;
  fam.dim = 2;
  fam.seed = 1;
  MetricOracle o = generate_metric(fam);
  cfg.epsilon = 2.0;
  cfg.sample_constant = 64.0;  // m = 16
  (void)indyk_median(o, cfg);
  CHECK(o.query_count() == 19 * 16);
}

TEST_CASE("same seed reproduces the same output") {
  MetricFamily fam;
  fam.kind = FamilyKind::EuclideanUniform;
  fam.n = 60;
  fam.dim = 2;
  fam.seed = 5;
  MetricOracle o = generate_metric(fam);
  IndykConfig cfg;
  cfg.epsilon = 1.0;
  cfg.seed = 123;
  const PointId a = indyk_median(o, cfg);
  const PointId b = indyk_median(o, cfg);
  CHECK(a == b);
}

TEST_CASE("the line metric median is found in at least 90 percent of seeds") {
  MetricOracle o = testsupport::line_oracle();
  IndykConfig cfg;
  cfg.epsilon = 1.0;
  cfg.sample_constant = 64.0;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    cfg.seed = seed;
    if (indyk_median(o, cfg) == 2) ++hits;
  }
  CHECK(hits >= 900);
}

TEST_CASE("output is always a valid point id") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    MetricFamily fam;
    fam.kind = (seed % 2) ? FamilyKind::EuclideanUniform : FamilyKind::EuclideanClustered;
    fam.n = 35;
    fam.dim = 2;
    fam.seed = seed;
    MetricOracle o = generate_metric(fam);
    IndykConfig cfg;
    cfg.epsilon = 1.0;
    cfg.seed = seed * 7 + 1;
    const PointId z = indyk_median(o, cfg);
    CHECK(z >= 1);
    CHECK(z <= 35);
  }
}

TEST_CASE("with the default constant the (1+eps) event clears 1 - 1/e empirically") {
  // Small-scale version of the calibration experiment: uniform points,
  // epsilon = 1, ratio <= 2 must happen well above the guaranteed floor.
  constexpr int kTrials = 120;
  int success = 0;
  for (int t = 0; t < kTrials; ++t) {
    MetricFamily fam;
    fam.kind = FamilyKind::EuclideanUniform;
    fam.n = 300;
    fam.dim = 2;
    fam.seed = rng::derive(2024, static_cast<std::uint64_t>(t));
    MetricOracle o = generate_metric(fam);
    IndykConfig cfg;
    cfg.epsilon = 1.0;
    cfg.seed = rng::derive(4048, static_cast<std::uint64_t>(t));
    const PointId z = indyk_median(o, cfg);
    if (approximation_ratio(o, z).ratio <= 2.0) ++success;
  }
  CHECK(success >= static_cast<int>(kTrials * (1.0 - 1.0 / 2.718281828)));
}
