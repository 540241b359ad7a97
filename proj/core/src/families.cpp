#include "median/families.hpp"

#include <stdexcept>

#include "median/rng.hpp"

namespace median {

namespace {

MetricOracle euclidean_uniform(const MetricFamily& f) {
  rng::Engine eng(f.seed);
  std::vector<double> coords(static_cast<std::size_t>(f.n) * f.dim);
  for (double& c : coords) c = rng::uniform_unit(eng);
  return MetricOracle::euclidean(std::move(coords), f.n, f.dim);
}

MetricOracle euclidean_clustered(const MetricFamily& f) {
  if (f.clusters < 1) throw std::invalid_argument("clustered family needs clusters >= 1");
  rng::Engine eng(f.seed);
  std::vector<double> centers(static_cast<std::size_t>(f.clusters) * f.dim);
  for (double& c : centers) c = rng::uniform_unit(eng);
  std::vector<double> coords(static_cast<std::size_t>(f.n) * f.dim);
  for (int i = 0; i < f.n; ++i) {
    const double* center = centers.data() + static_cast<std::size_t>(i % f.clusters) * f.dim;
    for (int k = 0; k < f.dim; ++k)
      coords[static_cast<std::size_t>(i) * f.dim + k] = center[k] + f.spread * rng::gaussian(eng);
  }
  return MetricOracle::euclidean(std::move(coords), f.n, f.dim);
}

}  // namespace

MetricOracle generate_metric(const MetricFamily& family) {
  switch (family.kind) {
    case FamilyKind::Discrete:
      return MetricOracle::discrete(family.n);
    case FamilyKind::EuclideanUniform:
      if (family.n < 1 || family.dim < 1)
        throw std::invalid_argument("euclidean-uniform family needs n >= 1, dim >= 1");
      return euclidean_uniform(family);
    case FamilyKind::EuclideanClustered:
      if (family.n < 1 || family.dim < 1)
        throw std::invalid_argument("euclidean-clustered family needs n >= 1, dim >= 1");
      return euclidean_clustered(family);
    case FamilyKind::Explicit:
      if (family.path.empty())
        throw std::invalid_argument("explicit family needs a matrix file path");
      return load_matrix_file(family.path);
  }
  throw std::invalid_argument("unknown metric family");
}

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Discrete: return "discrete";
    case FamilyKind::EuclideanUniform: return "euclidean-uniform";
    case FamilyKind::EuclideanClustered: return "euclidean-clustered";
    case FamilyKind::Explicit: return "explicit";
  }
  return "?";
}

FamilyKind family_from_name(const std::string& name) {
  if (name == "discrete") return FamilyKind::Discrete;
  if (name == "euclidean-uniform") return FamilyKind::EuclideanUniform;
  if (name == "euclidean-clustered") return FamilyKind::EuclideanClustered;
  if (name == "explicit") return FamilyKind::Explicit;
  throw std::invalid_argument("unknown metric family: " + name);
}

}  // namespace median
