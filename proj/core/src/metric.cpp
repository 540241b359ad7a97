#include "median/metric.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace median {

namespace {

void check_point(const MetricOracle& oracle, PointId p, const char* what) {
  if (p < 1 || p > oracle.n()) {
    std::ostringstream msg;
    msg << what << ": point " << p << " outside [1, " << oracle.n() << "]";
    throw std::out_of_range(msg.str());
  }
}

}  // namespace

MetricOracle::MetricOracle(MetricKind kind, int n, int dim, std::vector<double> data)
    : kind_(kind), n_(n), dim_(dim), data_(std::move(data)) {}

MetricOracle::MetricOracle(const MetricOracle& other)
    : kind_(other.kind_), n_(other.n_), dim_(other.dim_), data_(other.data_),
      queries_(other.query_count()) {}

MetricOracle& MetricOracle::operator=(const MetricOracle& other) {
  if (this != &other) {
    kind_ = other.kind_;
    n_ = other.n_;
    dim_ = other.dim_;
    data_ = other.data_;
    queries_.store(other.query_count(), std::memory_order_relaxed);
  }
  return *this;
}

MetricOracle::MetricOracle(MetricOracle&& other) noexcept
    : kind_(other.kind_), n_(other.n_), dim_(other.dim_),
      data_(std::move(other.data_)), queries_(other.query_count()) {}

MetricOracle& MetricOracle::operator=(MetricOracle&& other) noexcept {
  if (this != &other) {
    kind_ = other.kind_;
    n_ = other.n_;
    dim_ = other.dim_;
    data_ = std::move(other.data_);
    queries_.store(other.query_count(), std::memory_order_relaxed);
  }
  return *this;
}

MetricOracle MetricOracle::discrete(int n) {
  if (n < 1) throw std::invalid_argument("discrete metric needs n >= 1");
  return MetricOracle(MetricKind::Discrete, n, 0, {});
}

MetricOracle MetricOracle::euclidean(std::vector<double> coords, int n, int dim) {
  if (n < 1 || dim < 1) throw std::invalid_argument("euclidean metric needs n >= 1, dim >= 1");
  if (coords.size() != static_cast<std::size_t>(n) * dim)
    throw std::invalid_argument("euclidean metric: coords size != n * dim");
  return MetricOracle(MetricKind::Euclidean, n, dim, std::move(coords));
}

MetricOracle MetricOracle::from_matrix(std::vector<double> matrix, int n) {
  if (n < 1) throw std::invalid_argument("explicit metric needs n >= 1");
  if (matrix.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("explicit metric: matrix size != n * n");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = matrix[static_cast<std::size_t>(i) * n + j];
      if (!(d >= 0.0) || !std::isfinite(d)) {
        std::ostringstream msg;
        msg << "explicit metric: entry (" << i + 1 << "," << j + 1
            << ") = " << d << " is negative or not finite";
        throw std::invalid_argument(msg.str());
      }
      if (j < i) {
        const double mirror = matrix[static_cast<std::size_t>(j) * n + i];
        if (d != mirror) {
          std::ostringstream msg;
          msg << "explicit metric: asymmetric entries (" << j + 1 << "," << i + 1
              << ") = " << mirror << " vs (" << i + 1 << "," << j + 1 << ") = " << d;
          throw std::invalid_argument(msg.str());
        }
      }
    }
  }
  return MetricOracle(MetricKind::Explicit, n, 0, std::move(matrix));
}

double MetricOracle::query(PointId x, PointId y) const {
  check_point(*this, x, "query");
  check_point(*this, y, "query");
  queries_.fetch_add(1, std::memory_order_relaxed);
  switch (kind_) {
    case MetricKind::Discrete:
      return x == y ? 0.0 : 1.0;
    case MetricKind::Euclidean: {
      const double* a = data_.data() + static_cast<std::size_t>(x - 1) * dim_;
      const double* b = data_.data() + static_cast<std::size_t>(y - 1) * dim_;
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case MetricKind::Explicit:
      return data_[static_cast<std::size_t>(x - 1) * n_ + (y - 1)];
  }
  return 0.0;  // unreachable
}

ValidationReport validate_metric(const MetricOracle& oracle, int max_n,
                                 std::size_t max_violations, double tolerance) {
  const int n = oracle.n();
  if (n > max_n) {
    std::ostringstream msg;
    msg << "validate_metric: n = " << n << " exceeds the O(n^3) sweep cap " << max_n
        << "; raise max_n explicitly if the wait is acceptable";
    throw std::invalid_argument(msg.str());
  }

  ValidationReport report;
  auto add = [&](AxiomViolation v) {
    if (report.violations.size() >= max_violations) {
      report.truncated = true;
      return false;
    }
    report.violations.push_back(v);
    return true;
  };

  // Cache the matrix: the sweep would otherwise re-query each pair n times.
  std::vector<double> d(static_cast<std::size_t>(n) * n);
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      d[static_cast<std::size_t>(x - 1) * n + (y - 1)] = oracle.query(x, y);
  auto at = [&](int x, int y) { return d[static_cast<std::size_t>(x - 1) * n + (y - 1)]; };

  const double scale_tol = [&] {
    double m = 0.0;
    for (double v : d) m = std::max(m, std::abs(v));
    return tolerance * std::max(1.0, m);
  }();

  for (int x = 1; x <= n; ++x) {
    if (std::abs(at(x, x)) > scale_tol) {
      if (!add({AxiomViolation::Kind::Identity, x, 0, 0, at(x, x), 0.0})) return report;
    }
  }
  for (int x = 1; x <= n; ++x) {
    for (int y = x + 1; y <= n; ++y) {
      if (std::abs(at(x, y) - at(y, x)) > scale_tol) {
        if (!add({AxiomViolation::Kind::Symmetry, x, y, 0, at(x, y), at(y, x)})) return report;
      }
    }
  }
  // d(x,z) <= d(x,y) + d(y,z) for all triples with distinct roles.
  for (int x = 1; x <= n; ++x) {
    for (int z = x + 1; z <= n; ++z) {
      for (int y = 1; y <= n; ++y) {
        if (y == x || y == z) continue;
        const double direct = at(x, z);
        const double via = at(x, y) + at(y, z);
        if (direct > via + scale_tol) {
          if (!add({AxiomViolation::Kind::Triangle, x, y, z, direct, via})) return report;
        }
      }
    }
  }
  return report;
}

MetricOracle parse_matrix(std::istream& in, int max_n) {
  long long n_raw = 0;
  if (!(in >> n_raw)) throw std::invalid_argument("matrix file: missing point count");
  if (n_raw < 1 || n_raw > max_n) {
    std::ostringstream msg;
    msg << "matrix file: point count " << n_raw << " outside [1, " << max_n << "]";
    throw std::invalid_argument(msg.str());
  }
  const int n = static_cast<int>(n_raw);
  std::vector<double> matrix(static_cast<std::size_t>(n) * n);
  for (std::size_t k = 0; k < matrix.size(); ++k) {
    if (!(in >> matrix[k])) {
      std::ostringstream msg;
      msg << "matrix file: expected " << matrix.size() << " entries, got " << k;
      throw std::invalid_argument(msg.str());
    }
  }
  // from_matrix re-checks shape, sign and symmetry and produces the
  // user-facing messages for bad files.
  return MetricOracle::from_matrix(std::move(matrix), n);
}

MetricOracle load_matrix_file(const std::string& path, int max_n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  try {
    return parse_matrix(in, max_n);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace median
