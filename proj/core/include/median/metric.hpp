#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace median {

// Points are 1-based indices into the point set, matching the usual
// "metric space over [n]" convention.
using PointId = int;

enum class MetricKind { Discrete, Euclidean, Explicit };

// Distance oracle over n points. Every call to query() bumps a counter, so
// algorithm query complexity can be measured instead of trusted. The three
// backings cover what the tooling needs:
//   Discrete   d(x,y) = (x == y ? 0 : 1), no storage
//   Euclidean  points in R^dim, distances computed on the fly
//   Explicit   dense n x n matrix (symmetric, nonnegative; the diagonal and
//              the triangle inequality are deliberately NOT enforced here so
//              validate_metric() has something to catch)
class MetricOracle {
 public:
  static MetricOracle discrete(int n);
  // coords is row-major n x dim.
  static MetricOracle euclidean(std::vector<double> coords, int n, int dim);
  // matrix is row-major n x n; throws std::invalid_argument on shape,
  // negative or asymmetric entries.
  static MetricOracle from_matrix(std::vector<double> matrix, int n);

  int n() const { return n_; }
  int dim() const { return dim_; }
  MetricKind kind() const { return kind_; }

  // Counts every call, including x == y (callers that can infer d(x,x) = 0
  // are expected to skip the call, not rely on it being free).
  double query(PointId x, PointId y) const;

  std::uint64_t query_count() const {
    return queries_.load(std::memory_order_relaxed);
  }

  MetricOracle(const MetricOracle& other);
  MetricOracle& operator=(const MetricOracle& other);
  MetricOracle(MetricOracle&& other) noexcept;
  MetricOracle& operator=(MetricOracle&& other) noexcept;

 private:
  MetricOracle(MetricKind kind, int n, int dim, std::vector<double> data);

  MetricKind kind_;
  int n_ = 0;
  int dim_ = 0;
  std::vector<double> data_;  // matrix or coords; empty for Discrete
  // mutable: queries are logically const reads. Relaxed atomic so concurrent
  // readers still produce an exact total.
  mutable std::atomic<std::uint64_t> queries_{0};
};

struct AxiomViolation {
  enum class Kind { Identity, Symmetry, Triangle };
  Kind kind;
  // Points involved: Identity uses x; Symmetry x,y; Triangle x,y,z with the
  // failing inequality d(x,z) <= d(x,y) + d(y,z).
  PointId x = 0, y = 0, z = 0;
  double lhs = 0.0;  // offending distance (d(x,z) for Triangle)
  double rhs = 0.0;  // what it was compared against
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool truncated = false;  // stopped collecting after the cap
  bool ok() const { return violations.empty(); }
};

// Full O(n^3) sweep of the metric axioms (zero diagonal, symmetry, triangle).
// `tolerance` is relative slack so float rounding in computed distances does
// not produce phantom violations. Refuses n > max_n.
ValidationReport validate_metric(const MetricOracle& oracle, int max_n = 512,
                                 std::size_t max_violations = 1000,
                                 double tolerance = 1e-12);

// Matrix file format: first line n, then n lines of n nonnegative distances.
// Rejects negative or asymmetric entries and n outside [1, max_n].
MetricOracle parse_matrix(std::istream& in, int max_n = 20000);
MetricOracle load_matrix_file(const std::string& path, int max_n = 20000);

}  // namespace median
