#pragma once

// Per-type count vectors, the ordered unit-step proximity between them, and
// interval balance checks against a reference production profile.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "modbal/core_model.hpp"

namespace modbal {

/// Equal totals are compared with this absolute tolerance.
inline constexpr double kTotalTolerance = 1e-6;

/// Non-negative per-type quantities in universe order. Integral for the
/// slot model, fractional for the home-building cascade.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(std::size_t n, double fill = 0.0) : counts_(n, fill) {}
  explicit CountVector(std::vector<double> counts) : counts_(std::move(counts)) {}
  CountVector(std::initializer_list<double> counts) : counts_(counts) {}

  std::size_t size() const noexcept { return counts_.size(); }
  double operator[](std::size_t i) const { return counts_[i]; }
  double& operator[](std::size_t i) { return counts_[i]; }
  const std::vector<double>& values() const noexcept { return counts_; }

  double total() const;
  CountVector& operator+=(const CountVector& other);

  bool operator==(const CountVector&) const = default;

 private:
  std::vector<double> counts_;
};

/// Multiplicity of every universe type in the bag. Unknown element indices
/// throw std::invalid_argument.
CountVector count_vector(const IntervalBag& bag, const ElementUniverse& universe);

/// Sum over i of |prefix(e0)_i - prefix(e)_i|: the number of unit moves
/// between adjacent types needed to turn one vector into the other. Throws
/// std::invalid_argument on length mismatch or on totals differing by more
/// than kTotalTolerance ("incomparable cardinalities").
double proximity(const CountVector& e0, const CountVector& e);

struct BalanceVerdict {
  std::vector<double> deltas;             // one per interval
  double max_delta = 0.0;
  double threshold = 0.0;
  bool satisfied = true;
  std::vector<std::size_t> violating;     // 1-based interval ordinals
};

/// Evaluates max_i proximity(e0, e(X_i)) <= delta_max over all intervals.
/// e0 must sum to the interval capacity (slots per interval x processors).
BalanceVerdict balance_verdict(const Instance& instance, const SlotSchedule& schedule,
                               const TimeGrid& grid, const CountVector& e0, double delta_max);

/// Largest per-interval proximity of a verdict.
inline double balance_index(const BalanceVerdict& verdict) { return verdict.max_delta; }

/// Component-wise requirement <= capacity.
bool dominance_leq(const CountVector& requirement, const CountVector& capacity);

/// Component-wise max(0, requirement - capacity).
CountVector violation(const CountVector& requirement, const CountVector& capacity);

}  // namespace modbal
