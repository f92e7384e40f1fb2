#include "modbal/balance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace modbal {

double CountVector::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0.0);
}

CountVector& CountVector::operator+=(const CountVector& other) {
  if (other.size() != size()) throw std::invalid_argument("count vector length mismatch");
  for (std::size_t i = 0; i < size(); ++i) counts_[i] += other.counts_[i];
  return *this;
}

CountVector count_vector(const IntervalBag& bag, const ElementUniverse& universe) {
  CountVector counts(universe.size());
  for (ElementIndex e : bag.elements) {
    if (e >= universe.size()) {
      throw std::invalid_argument(fmt::format("interval {}: unknown element type {}", bag.interval, e));
    }
    counts[e] += 1.0;
  }
  return counts;
}

double proximity(const CountVector& e0, const CountVector& e) {
  if (e0.size() != e.size()) throw std::invalid_argument("count vector length mismatch");
  if (std::abs(e0.total() - e.total()) > kTotalTolerance) {
    throw std::invalid_argument("incomparable cardinalities");
  }
  double lhs = 0.0;
  double rhs = 0.0;
  double distance = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    lhs += e0[i];
    rhs += e[i];
    distance += std::abs(lhs - rhs);
  }
  return distance;
}

BalanceVerdict balance_verdict(const Instance& instance, const SlotSchedule& schedule,
                               const TimeGrid& grid, const CountVector& e0, double delta_max) {
  const double capacity =
      static_cast<double>(grid.interval_len_slots * schedule.placements.size());
  if (e0.size() != instance.universe().size()) {
    throw std::invalid_argument("reference profile length differs from universe size");
  }
  if (std::abs(e0.total() - capacity) > kTotalTolerance) {
    throw std::invalid_argument(
        fmt::format("reference profile sums to {} but interval capacity is {}", e0.total(), capacity));
  }

  BalanceVerdict verdict;
  verdict.threshold = delta_max;
  for (const auto& bag : interval_bags(instance, schedule, grid)) {
    const double d = proximity(e0, count_vector(bag, instance.universe()));
    verdict.deltas.push_back(d);
    verdict.max_delta = std::max(verdict.max_delta, d);
    if (d > delta_max) verdict.violating.push_back(bag.interval);
  }
  verdict.satisfied = verdict.max_delta <= delta_max;
  return verdict;
}

bool dominance_leq(const CountVector& requirement, const CountVector& capacity) {
  if (requirement.size() != capacity.size()) {
    throw std::invalid_argument("count vector length mismatch");
  }
  for (std::size_t i = 0; i < requirement.size(); ++i) {
    if (requirement[i] > capacity[i]) return false;
  }
  return true;
}

CountVector violation(const CountVector& requirement, const CountVector& capacity) {
  if (requirement.size() != capacity.size()) {
    throw std::invalid_argument("count vector length mismatch");
  }
  CountVector excess(requirement.size());
  for (std::size_t i = 0; i < requirement.size(); ++i) {
    excess[i] = std::max(0.0, requirement[i] - capacity[i]);
  }
  return excess;
}

}  // namespace modbal
