#pragma once

// Violation-driven schedule repair. Buildings active in months whose detail
// requirement exceeds the productivity profile get a group of correction
// variants (shifts and exchanges); variants are scored by how much they
// reduce the weighted violation measure, a budgeted multiple-choice knapsack
// picks at most one per group, and the picks are applied. The loop repeats
// until the schedule is balanced or stops improving.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modbal/balance.hpp"
#include "modbal/homebuilding.hpp"
#include "modbal/mckp.hpp"

namespace modbal {

enum class MoveKind { None, ShiftRight, ShiftLeft, Exchange };

std::string to_string(MoveKind kind);
std::optional<MoveKind> parse_move_kind(std::string_view text);

struct CorrectionVariant {
  MoveKind kind = MoveKind::None;
  std::string building;
  std::string partner;  // exchange only
  double days = 0.0;    // shifts only, > 0
  double profit = 0.0;
  double cost = 0.0;

  /// Buildings whose placement the variant changes.
  std::vector<std::string> touched() const;
  std::string label() const;

  bool operator==(const CorrectionVariant&) const = default;
};

struct CorrectionGroup {
  int index = 0;
  std::vector<std::string> targets;
  std::vector<CorrectionVariant> variants;  // variants[0] is none

  bool operator==(const CorrectionGroup&) const = default;
};

struct ImproveConfig {
  std::vector<double> shift_days{3.0, 7.0, 14.0, 21.0};
  bool exchanges = true;
  double cost_per_day = 0.1;
  double exchange_cost = 2.0;
  std::vector<double> weights;  // per detail; empty means 1 everywhere
  double epsilon = 1e-9;

  bool operator==(const ImproveConfig&) const = default;
};

/// Sum over months and details of w_d * max(0, required - capacity) /
/// max(capacity, epsilon). Unlimited (infinite) capacities contribute 0.
double violation_measure(const RequirementTable& table, const CountVector& capacity,
                         const ImproveConfig& config = {});

/// Largest absolute excess of any month and detail over capacity.
double max_violation(const RequirementTable& table, const CountVector& capacity);

/// 1-based months where some detail exceeds capacity.
std::vector<int> violated_months(const RequirementTable& table, const CountVector& capacity);

/// True when every building lies inside [0, months] and team occupancy
/// intervals are pairwise disjoint.
bool schedule_feasible(const HousingModel& model, const TeamSchedule& schedule);

/// Applies one variant. Throws std::invalid_argument on an unknown building,
/// a degenerate exchange, a placement leaving the horizon, or an overlap
/// (the message names the team).
TeamSchedule apply_variant(const HousingModel& model, const TeamSchedule& schedule,
                           const CorrectionVariant& variant);

/// Unscored correction groups, one per building active in a violated month,
/// in model building order. Costs are filled in; profits are zero.
std::vector<CorrectionGroup> generate_correction_groups(const HousingModel& model,
                                                        const TeamSchedule& schedule,
                                                        const CountVector& capacity,
                                                        const ImproveConfig& config = {});

struct Score {
  double profit = 0.0;
  double cost = 0.0;
};

Score score_variant(const HousingModel& model, const TeamSchedule& schedule,
                    const CorrectionVariant& variant, const CountVector& capacity,
                    const ImproveConfig& config = {});

void score_groups(const HousingModel& model, const TeamSchedule& schedule,
                  std::vector<CorrectionGroup>& groups, const CountVector& capacity,
                  const ImproveConfig& config = {});

MckpProblem to_problem(const std::vector<CorrectionGroup>& groups, double budget);

/// Applies every active choice in group order. Throws std::invalid_argument
/// when two choices touch the same building or a move is infeasible.
TeamSchedule apply_selection(const HousingModel& model, const TeamSchedule& schedule,
                             const std::vector<CorrectionGroup>& groups,
                             const Selection& selection);

struct LoopParams {
  double budget = 5.0;
  std::size_t max_iterations = 50;
  Selector selector = Selector::Greedy;
  double cost_scale = 10.0;
  ImproveConfig config;

  bool operator==(const LoopParams&) const = default;
};

enum class StopReason { Balanced, NoProfitableSelection, NoImprovement, IterationLimit };

std::string to_string(StopReason reason);

struct IterationRecord {
  std::size_t iteration = 0;  // 1-based
  double v_before = 0.0;
  double v_after = 0.0;
  double max_violation = 0.0;  // after the iteration
  std::vector<CorrectionVariant> applied;
  bool fallback = false;  // combined selection was rejected, best single move used
};

struct LoopResult {
  TeamSchedule schedule;
  std::vector<IterationRecord> trace;
  StopReason stop = StopReason::Balanced;
  double initial_v = 0.0;
  double final_v = 0.0;
};

LoopResult improvement_loop(const HousingModel& model, const TeamSchedule& schedule,
                            const CountVector& capacity, const LoopParams& params = {});

}  // namespace modbal
