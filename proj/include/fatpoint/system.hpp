#pragma once

#include "fatpoint/affine.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fatpoint {

struct MultiplicityRun {
  AffineValue value;
  std::uint64_t count = 1;

  friend bool operator==(const MultiplicityRun&, const MultiplicityRun&) = default;
};

// N+1 (or N) points chosen from a system, as run indices. A run index may
// repeat up to that run's count.
using Pivot = std::vector<std::size_t>;

// A concrete system: integer degree and one multiplicity per point.
struct ConcreteSystem {
  int dimension = 2;
  std::int64_t degree = 0;
  std::vector<std::int64_t> multiplicities;
};

// The linear system L_N(d; m_1, ..., m_s) of degree-d forms on P^N vanishing
// to order m_i at s generic points. Degree and multiplicities are affine in m.
//
// Runs are kept in canonical form: sorted by eventual value, descending, with
// equal values merged. A multiplicity that is <= 0 at some m imposes no
// condition at that m.
class FatPointSystem {
 public:
  FatPointSystem(int dimension, AffineValue degree, std::vector<MultiplicityRun> runs);

  static FatPointSystem concrete(int dimension, std::int64_t degree,
                                 const std::vector<std::int64_t>& multiplicities);

  int dimension() const { return dimension_; }
  const AffineValue& degree() const { return degree_; }
  const std::vector<MultiplicityRun>& runs() const { return runs_; }
  std::uint64_t point_count() const;
  bool is_concrete() const;

  // Value of the i-th point in canonical order.
  const AffineValue& point(std::uint64_t i) const;

  // Run indices of the first n points in canonical order. Throws when the
  // system has fewer than n points.
  Pivot leading_points(std::uint64_t n) const;

  // Evaluates at m; multiplicities below zero are clamped to zero. Throws
  // std::overflow_error when a value leaves 64-bit range.
  ConcreteSystem at(const Integer& m) const;

  // "L_4(8m-1; (5m)^8)".
  std::string str() const;

  friend bool operator==(const FatPointSystem&, const FatPointSystem&) = default;

 private:
  int dimension_;
  AffineValue degree_;
  std::vector<MultiplicityRun> runs_;
};

// Checks that every index is in range and no run is used more often than its
// count. Throws std::invalid_argument otherwise.
void validate_pivot(const FatPointSystem& sys, const Pivot& pivot);

// max(0, C(d+N, N) - sum_i C(m_i+N-1, N)) at the given m. Throws
// std::domain_error when the degree is negative there.
Integer expected_dimension(const FatPointSystem& sys, const Integer& m);

}  // namespace fatpoint
