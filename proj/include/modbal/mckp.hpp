#pragma once

// Budgeted multiple-choice knapsack: pick exactly one variant per group
// (variant 0 is always the empty "none" choice) maximizing total profit with
// total cost <= budget.

#include <cstddef>
#include <vector>

namespace modbal {

struct MckpItem {
  double profit = 0.0;
  double cost = 0.0;

  bool operator==(const MckpItem&) const = default;
};

struct MckpGroup {
  int index = 0;                // caller's group label, used for ordering
  std::vector<MckpItem> items;  // items[0] must be (0, 0)

  bool operator==(const MckpGroup&) const = default;
};

struct MckpProblem {
  std::vector<MckpGroup> groups;
  double budget = 0.0;

  bool operator==(const MckpProblem&) const = default;
};

struct Choice {
  int group = 0;
  std::size_t variant = 0;  // 0 = none

  bool operator==(const Choice&) const = default;
};

/// One choice per group, sorted by group index.
struct Selection {
  std::vector<Choice> choices;
  double profit = 0.0;
  double cost = 0.0;

  std::size_t variant_of(int group) const;
  /// Choices other than "none".
  std::vector<Choice> active() const;

  bool operator==(const Selection&) const = default;
};

enum class Selector { Greedy, Exact };

inline constexpr double kBudgetTolerance = 1e-9;
inline constexpr std::size_t kDefaultStateCap = 20'000'000;

/// Throws ValidationError on a negative budget or cost, a group without a
/// leading (0, 0) variant, or a repeated group index.
void validate_problem(const MckpProblem& problem);

/// Ratio-ordered packing. Items are ranked by profit/cost (zero cost with
/// positive profit first), then group index, then variant index; an item is
/// taken when its profit is positive, its group is still open and it fits.
Selection mckp_greedy(const MckpProblem& problem);

/// Optimal selection by dynamic programming over costs scaled to integers
/// (rounded up). Ties go to the lexicographically smallest variant vector.
/// Throws std::length_error ("instance too large for exact oracle") when
/// groups x (scaled budget + 1) exceeds state_cap.
Selection mckp_exact(const MckpProblem& problem, double cost_scale = 10.0,
                     std::size_t state_cap = kDefaultStateCap);

Selection mckp_solve(const MckpProblem& problem, Selector selector, double cost_scale = 10.0);

}  // namespace modbal
