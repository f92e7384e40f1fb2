#include "modbal/improve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

namespace modbal {

std::string to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::None: return "none";
    case MoveKind::ShiftRight: return "shift_right";
    case MoveKind::ShiftLeft: return "shift_left";
    case MoveKind::Exchange: return "exchange";
  }
  return "none";
}

std::optional<MoveKind> parse_move_kind(std::string_view text) {
  for (auto k : {MoveKind::None, MoveKind::ShiftRight, MoveKind::ShiftLeft, MoveKind::Exchange}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Balanced: return "balanced";
    case StopReason::NoProfitableSelection: return "no profitable selection";
    case StopReason::NoImprovement: return "no improvement";
    case StopReason::IterationLimit: return "iteration limit";
  }
  return "balanced";
}

std::vector<std::string> CorrectionVariant::touched() const {
  switch (kind) {
    case MoveKind::None: return {};
    case MoveKind::Exchange: return {building, partner};
    default: return {building};
  }
}

std::string CorrectionVariant::label() const {
  switch (kind) {
    case MoveKind::None: return "none";
    case MoveKind::ShiftRight: return fmt::format("{} right {}d", building, days);
    case MoveKind::ShiftLeft: return fmt::format("{} left {}d", building, days);
    case MoveKind::Exchange: return fmt::format("exchange {} {}", building, partner);
  }
  return "none";
}

namespace {

double weight(const ImproveConfig& config, std::size_t d) {
  return config.weights.empty() ? 1.0 : config.weights.at(d);
}

void check_width(const CountVector& row, const CountVector& capacity) {
  if (row.size() != capacity.size()) {
    throw std::invalid_argument("capacity profile length differs from detail count");
  }
}

// Empty string when feasible, otherwise the reason.
std::string infeasibility(const HousingModel& model, const TeamSchedule& schedule) {
  for (const auto& team : schedule.teams) {
    std::vector<std::pair<double, double>> spans;
    for (const auto& a : team.assignments) {
      const Building* b = model.find_building(a.building);
      if (b == nullptr) return "unknown building " + a.building;
      if (a.start < -kTimeTolerance ||
          a.start + b->duration > static_cast<double>(model.months) + kTimeTolerance) {
        return fmt::format("building {} leaves the horizon", a.building);
      }
      spans.emplace_back(a.start, a.start + b->duration);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first < spans[i - 1].second - kTimeTolerance) {
        return "overlap on team " + team.id;
      }
    }
  }
  return {};
}

TeamAssignment& at(TeamSchedule& schedule, const Slot& slot) {
  return schedule.teams[slot.team].assignments[slot.index];
}

Slot require_slot(const TeamSchedule& schedule, const std::string& building) {
  auto slot = locate(schedule, building);
  if (!slot) throw std::invalid_argument("building " + building + " is not scheduled");
  return *slot;
}

void sort_teams(TeamSchedule& schedule) {
  for (auto& team : schedule.teams) {
    std::stable_sort(team.assignments.begin(), team.assignments.end(),
                     [](const TeamAssignment& a, const TeamAssignment& b) { return a.start < b.start; });
  }
}

TeamSchedule move(const TeamSchedule& schedule, const CorrectionVariant& variant) {
  TeamSchedule out = schedule;
  switch (variant.kind) {
    case MoveKind::None:
      return out;
    case MoveKind::ShiftRight:
    case MoveKind::ShiftLeft: {
      if (!(variant.days > 0.0)) throw std::invalid_argument("shift days must be positive");
      const double delta = variant.days / kDaysPerMonth;
      at(out, require_slot(out, variant.building)).start +=
          variant.kind == MoveKind::ShiftRight ? delta : -delta;
      break;
    }
    case MoveKind::Exchange: {
      if (variant.building == variant.partner) throw std::invalid_argument("degenerate exchange");
      const Slot a = require_slot(out, variant.building);
      const Slot b = require_slot(out, variant.partner);
      std::swap(at(out, a).building, at(out, b).building);
      break;
    }
  }
  sort_teams(out);
  return out;
}

bool active_in(const Building& b, double start, int month) {
  const double lo = std::max(start, static_cast<double>(month - 1));
  const double hi = std::min(start + b.duration, static_cast<double>(month));
  return hi > lo;
}

}  // namespace

double violation_measure(const RequirementTable& table, const CountVector& capacity,
                         const ImproveConfig& config) {
  double total = 0.0;
  for (const auto& row : table.rows) {
    check_width(row, capacity);
    for (std::size_t d = 0; d < row.size(); ++d) {
      if (std::isinf(capacity[d])) continue;
      const double excess = std::max(0.0, row[d] - capacity[d]);
      if (excess > 0.0) total += weight(config, d) * excess / std::max(capacity[d], config.epsilon);
    }
  }
  return total;
}

double max_violation(const RequirementTable& table, const CountVector& capacity) {
  double worst = 0.0;
  for (const auto& row : table.rows) {
    check_width(row, capacity);
    const auto excess = violation(row, capacity);
    for (double e : excess.values()) worst = std::max(worst, e);
  }
  return worst;
}

std::vector<int> violated_months(const RequirementTable& table, const CountVector& capacity) {
  std::vector<int> months;
  for (std::size_t m = 0; m < table.rows.size(); ++m) {
    check_width(table.rows[m], capacity);
    if (!dominance_leq(table.rows[m], capacity)) months.push_back(static_cast<int>(m) + 1);
  }
  return months;
}

bool schedule_feasible(const HousingModel& model, const TeamSchedule& schedule) {
  return infeasibility(model, schedule).empty();
}

TeamSchedule apply_variant(const HousingModel& model, const TeamSchedule& schedule,
                           const CorrectionVariant& variant) {
  TeamSchedule out = move(schedule, variant);
  if (auto why = infeasibility(model, out); !why.empty()) {
    throw std::invalid_argument(fmt::format("{}: {}", variant.label(), why));
  }
  return out;
}

std::vector<CorrectionGroup> generate_correction_groups(const HousingModel& model,
                                                        const TeamSchedule& schedule,
                                                        const CountVector& capacity,
                                                        const ImproveConfig& config) {
  const auto months = violated_months(horizon_requirement_table(model, schedule), capacity);
  std::vector<CorrectionGroup> groups;
  if (months.empty()) return groups;

  auto feasible = [&](const CorrectionVariant& v) {
    return infeasibility(model, move(schedule, v)).empty();
  };

  for (const auto& b : model.buildings) {
    const auto slot = locate(schedule, b.id);
    if (!slot) continue;
    const double start = schedule.teams[slot->team].assignments[slot->index].start;
    const bool hit = std::any_of(months.begin(), months.end(),
                                 [&](int m) { return active_in(b, start, m); });
    if (!hit) continue;

    CorrectionGroup group;
    group.index = static_cast<int>(groups.size()) + 1;
    group.targets = {b.id};
    group.variants.push_back({});
    for (auto kind : {MoveKind::ShiftRight, MoveKind::ShiftLeft}) {
      for (double days : config.shift_days) {
        CorrectionVariant v{kind, b.id, {}, days, 0.0, config.cost_per_day * days};
        if (feasible(v)) group.variants.push_back(std::move(v));
      }
    }
    if (config.exchanges) {
      for (const auto& other : model.buildings) {
        if (other.id == b.id || !locate(schedule, other.id)) continue;
        CorrectionVariant v{MoveKind::Exchange, b.id, other.id, 0.0, 0.0, config.exchange_cost};
        if (feasible(v)) group.variants.push_back(std::move(v));
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

Score score_variant(const HousingModel& model, const TeamSchedule& schedule,
                    const CorrectionVariant& variant, const CountVector& capacity,
                    const ImproveConfig& config) {
  if (variant.kind == MoveKind::None) return {};
  const TeamSchedule after = apply_variant(model, schedule, variant);
  const double before_v = violation_measure(horizon_requirement_table(model, schedule), capacity, config);
  const double after_v = violation_measure(horizon_requirement_table(model, after), capacity, config);
  const double cost = variant.kind == MoveKind::Exchange ? config.exchange_cost
                                                         : config.cost_per_day * variant.days;
  return {before_v - after_v, cost};
}

void score_groups(const HousingModel& model, const TeamSchedule& schedule,
                  std::vector<CorrectionGroup>& groups, const CountVector& capacity,
                  const ImproveConfig& config) {
  const double base = violation_measure(horizon_requirement_table(model, schedule), capacity, config);
  for (auto& group : groups) {
    for (auto& v : group.variants) {
      if (v.kind == MoveKind::None) continue;
      const TeamSchedule after = apply_variant(model, schedule, v);
      v.profit = base - violation_measure(horizon_requirement_table(model, after), capacity, config);
      v.cost = v.kind == MoveKind::Exchange ? config.exchange_cost : config.cost_per_day * v.days;
    }
  }
}

MckpProblem to_problem(const std::vector<CorrectionGroup>& groups, double budget) {
  MckpProblem problem;
  problem.budget = budget;
  for (const auto& g : groups) {
    MckpGroup mg{g.index, {}};
    for (const auto& v : g.variants) {
      mg.items.push_back(v.kind == MoveKind::None ? MckpItem{} : MckpItem{v.profit, v.cost});
    }
    problem.groups.push_back(std::move(mg));
  }
  return problem;
}

namespace {

const CorrectionVariant& chosen(const std::vector<CorrectionGroup>& groups, const Choice& c) {
  for (const auto& g : groups) {
    if (g.index == c.group) return g.variants.at(c.variant);
  }
  throw std::invalid_argument(fmt::format("selection refers to unknown group {}", c.group));
}

}  // namespace

TeamSchedule apply_selection(const HousingModel& model, const TeamSchedule& schedule,
                             const std::vector<CorrectionGroup>& groups,
                             const Selection& selection) {
  TeamSchedule out = schedule;
  std::set<std::string> used;
  for (const auto& c : selection.active()) {
    const auto& v = chosen(groups, c);
    for (const auto& id : v.touched()) {
      if (!used.insert(id).second) {
        throw std::invalid_argument("building " + id + " is targeted by more than one choice");
      }
    }
    out = apply_variant(model, out, v);
  }
  return out;
}

LoopResult improvement_loop(const HousingModel& model, const TeamSchedule& schedule,
                            const CountVector& capacity, const LoopParams& params) {
  LoopResult result;
  result.schedule = schedule;
  auto measure = [&](const TeamSchedule& s) {
    return violation_measure(horizon_requirement_table(model, s), capacity, params.config);
  };
  result.initial_v = measure(schedule);
  result.final_v = result.initial_v;

  for (std::size_t it = 1;; ++it) {
    const auto table = horizon_requirement_table(model, result.schedule);
    if (violated_months(table, capacity).empty()) {
      result.stop = StopReason::Balanced;
      break;
    }
    if (it > params.max_iterations) {
      result.stop = StopReason::IterationLimit;
      break;
    }

    IterationRecord rec;
    rec.iteration = it;
    rec.v_before = result.final_v;
    rec.v_after = rec.v_before;
    rec.max_violation = max_violation(table, capacity);

    auto groups = generate_correction_groups(model, result.schedule, capacity, params.config);
    score_groups(model, result.schedule, groups, capacity, params.config);
    const Selection sel =
        mckp_solve(to_problem(groups, params.budget), params.selector, params.cost_scale);

    std::vector<CorrectionVariant> picked;
    for (const auto& c : sel.active()) {
      const auto& v = chosen(groups, c);
      if (v.profit > 0.0) picked.push_back(v);
    }
    if (picked.empty()) {
      result.trace.push_back(std::move(rec));
      result.stop = StopReason::NoProfitableSelection;
      break;
    }

    // Drop picks that collide with an earlier one or no longer fit.
    TeamSchedule next = result.schedule;
    std::set<std::string> used;
    std::vector<CorrectionVariant> applied;
    for (const auto& v : picked) {
      const auto touched = v.touched();
      if (std::any_of(touched.begin(), touched.end(), [&](const auto& id) { return used.count(id); })) {
        continue;
      }
      TeamSchedule trial = move(next, v);
      if (!infeasibility(model, trial).empty()) continue;
      next = std::move(trial);
      used.insert(touched.begin(), touched.end());
      applied.push_back(v);
    }

    double next_v = applied.empty() ? rec.v_before : measure(next);
    if (!(next_v < rec.v_before)) {
      const auto best = std::max_element(picked.begin(), picked.end(),
                                         [](const auto& a, const auto& b) { return a.profit < b.profit; });
      next = apply_variant(model, result.schedule, *best);
      next_v = measure(next);
      applied = {*best};
      rec.fallback = true;
      if (!(next_v < rec.v_before)) {
        rec.applied.clear();
        result.trace.push_back(std::move(rec));
        result.stop = StopReason::NoImprovement;
        break;
      }
    }

    result.schedule = std::move(next);
    result.final_v = next_v;
    rec.v_after = next_v;
    rec.max_violation = max_violation(horizon_requirement_table(model, result.schedule), capacity);
    rec.applied = std::move(applied);
    result.trace.push_back(std::move(rec));
  }
  return result;
}

}  // namespace modbal
