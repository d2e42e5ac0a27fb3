#include "fatpoint/system.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fatpoint {

FatPointSystem::FatPointSystem(int dimension, AffineValue degree, std::vector<MultiplicityRun> runs)
    : dimension_(dimension), degree_(std::move(degree)) {
  if (dimension < 2) throw std::invalid_argument("ambient dimension must be at least 2");
  for (const auto& r : runs) {
    if (r.count == 0) throw std::invalid_argument("multiplicity run with zero count");
  }
  std::stable_sort(runs.begin(), runs.end(), [](const MultiplicityRun& a, const MultiplicityRun& b) {
    return eventual_compare(a.value, b.value) == std::strong_ordering::greater;
  });
  for (auto& r : runs) {
    if (!runs_.empty() && runs_.back().value == r.value) {
      runs_.back().count += r.count;
    } else {
      runs_.push_back(std::move(r));
    }
  }
}

FatPointSystem FatPointSystem::concrete(int dimension, std::int64_t degree,
                                        const std::vector<std::int64_t>& multiplicities) {
  std::vector<MultiplicityRun> runs;
  runs.reserve(multiplicities.size());
  for (auto m : multiplicities) runs.push_back({AffineValue::constant(m), 1});
  return FatPointSystem(dimension, AffineValue::constant(degree), std::move(runs));
}

std::uint64_t FatPointSystem::point_count() const {
  std::uint64_t total = 0;
  for (const auto& r : runs_) total += r.count;
  return total;
}

bool FatPointSystem::is_concrete() const {
  if (!degree_.is_constant()) return false;
  return std::all_of(runs_.begin(), runs_.end(), [](const auto& r) { return r.value.is_constant(); });
}

const AffineValue& FatPointSystem::point(std::uint64_t i) const {
  for (const auto& r : runs_) {
    if (i < r.count) return r.value;
    i -= r.count;
  }
  throw std::out_of_range("point index past the end of the system");
}

Pivot FatPointSystem::leading_points(std::uint64_t n) const {
  if (point_count() < n) {
    std::ostringstream os;
    os << "system has " << point_count() << " points, " << n << " required";
    throw std::invalid_argument(os.str());
  }
  Pivot pivot;
  pivot.reserve(n);
  for (std::size_t i = 0; i < runs_.size() && pivot.size() < n; ++i) {
    for (std::uint64_t c = 0; c < runs_[i].count && pivot.size() < n; ++c) pivot.push_back(i);
  }
  return pivot;
}

ConcreteSystem FatPointSystem::at(const Integer& m) const {
  ConcreteSystem out;
  out.dimension = dimension_;
  out.degree = to_int64(degree_.at(m));
  for (const auto& r : runs_) {
    Integer v = r.value.at(m);
    std::int64_t value = v > 0 ? to_int64(v) : 0;
    out.multiplicities.insert(out.multiplicities.end(), r.count, value);
  }
  return out;
}

std::string FatPointSystem::str() const {
  std::ostringstream os;
  os << "L_" << dimension_ << "(" << degree_.str() << ";";
  bool first = true;
  for (const auto& r : runs_) {
    os << (first ? " " : ", ");
    first = false;
    bool wrap = !r.value.is_constant() || r.value.intercept < 0;
    if (wrap) os << "(";
    os << r.value.str();
    if (wrap) os << ")";
    if (r.count != 1) os << "^" << r.count;
  }
  os << ")";
  return os.str();
}

void validate_pivot(const FatPointSystem& sys, const Pivot& pivot) {
  std::vector<std::uint64_t> used(sys.runs().size(), 0);
  for (auto idx : pivot) {
    if (idx >= sys.runs().size()) throw std::invalid_argument("pivot run index out of range");
    if (++used[idx] > sys.runs()[idx].count)
      throw std::invalid_argument("pivot uses a run more often than its count");
  }
}

Integer expected_dimension(const FatPointSystem& sys, const Integer& m) {
  const Integer n = sys.dimension();
  Integer d = sys.degree().at(m);
  if (d < 0) throw std::domain_error("expected_dimension: negative degree " + d.str());
  Integer value = binomial(d + n, n);
  for (const auto& r : sys.runs()) {
    Integer mult = r.value.at(m);
    if (mult <= 0) continue;
    value -= binomial(mult + n - 1, n) * r.count;
  }
  return value > 0 ? value : Integer(0);
}

}  // namespace fatpoint
