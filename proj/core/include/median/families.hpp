#pragma once

#include <cstdint>
#include <string>

#include "median/metric.hpp"

namespace median {

// Instance generators used by tests and the CLI.
enum class FamilyKind { Discrete, EuclideanUniform, EuclideanClustered, Explicit };

struct MetricFamily {
  FamilyKind kind = FamilyKind::EuclideanUniform;
  int n = 0;
  int dim = 2;          // euclidean families
  int clusters = 5;     // euclidean-clustered
  double spread = 0.05; // gaussian sigma around each cluster center
  std::string path;     // explicit: matrix file
  std::uint64_t seed = 0;
};

// Deterministic for a fixed family: same parameters + seed give the exact
// same oracle. EuclideanUniform draws points from [0,1)^dim; clustered draws
// `clusters` centers uniformly and scatters points around them round-robin.
MetricOracle generate_metric(const MetricFamily& family);

const char* family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);  // throws on unknown

}  // namespace median
