#pragma once

// Shared helpers for the unit and acceptance suites. The enumeration and
// re-summation code here is deliberately independent of the library's closed
// forms: tests compare the two.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "median/lasvegas.hpp"
#include "median/metric.hpp"

namespace testsupport {

// Points on a line at coordinates 0, 1, 10 as an explicit matrix
// (costs 11, 10, 19; the 1-median is point 2).
inline median::MetricOracle line_oracle() {
  return median::MetricOracle::from_matrix({0, 1, 10,
                                            1, 0, 9,
                                            10, 9, 0}, 3);
}

// One-dimensional euclidean oracle from explicit coordinates.
inline median::MetricOracle line_points(std::vector<double> coords) {
  const int n = static_cast<int>(coords.size());
  return median::MetricOracle::euclidean(std::move(coords), n, 1);
}

// All matching sums over a ball given its distance table: every way to pair
// the elements up (one leftover allowed when odd), each equally likely under
// a uniform random bijection. Brute-force recursion, fine through size 8
// (105 matchings).
inline void enumerate_rec(const std::vector<double>& table, std::size_t b,
                          std::vector<int>& left, double acc,
                          std::vector<double>& out) {
  if (left.size() < 2) {
    out.push_back(acc);
    return;
  }
  const int first = left.front();
  for (std::size_t k = 1; k < left.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t t = 1; t < left.size(); ++t)
      if (t != k) rest.push_back(left[t]);
    enumerate_rec(table, b, rest, acc + table[static_cast<std::size_t>(first) * b + left[k]],
                  out);
  }
}

inline std::vector<double> enumerate_pairing_sums(const std::vector<double>& table,
                                                  int ball_size) {
  std::vector<double> sums;
  const std::size_t b = static_cast<std::size_t>(ball_size);
  if (ball_size % 2 == 0) {
    std::vector<int> all;
    for (int i = 0; i < ball_size; ++i) all.push_back(i);
    enumerate_rec(table, b, all, 0.0, sums);
  } else {
    for (int leftover = 0; leftover < ball_size; ++leftover) {
      std::vector<int> rest;
      for (int i = 0; i < ball_size; ++i)
        if (i != leftover) rest.push_back(i);
      enumerate_rec(table, b, rest, 0.0, sums);
    }
  }
  if (sums.empty()) sums.push_back(0.0);  // 0 or 1 member: the sum is 0
  return sums;
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double second_moment_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s / static_cast<double>(v.size());
}

// Every run report must have exactly one explanation.
inline bool report_explained(const median::RunReport& r) {
  const int ways = (r.certificate.has_value() ? 1 : 0) + (r.fallback_used ? 1 : 0) +
                   (r.guard_used ? 1 : 0);
  return ways == 1 && r.output >= 1;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// A pairing is sane for the given members: disjoint pairs, every member used
// exactly once, leftover present iff odd.
inline bool pairing_covers(const median::Pairing& p, const std::vector<median::PointId>& members) {
  std::vector<median::PointId> seen;
  for (const auto& [a, b] : p.pairs) {
    seen.push_back(a);
    seen.push_back(b);
  }
  if (p.leftover) seen.push_back(*p.leftover);
  if (seen.size() != members.size()) return false;
  std::vector<median::PointId> sorted_members = members;
  std::sort(seen.begin(), seen.end());
  std::sort(sorted_members.begin(), sorted_members.end());
  return seen == sorted_members;
}

}  // namespace testsupport
