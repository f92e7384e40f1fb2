#include "modbal/homebuilding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

namespace modbal {

const Building* HousingModel::find_building(std::string_view id) const {
  auto it = std::find_if(buildings.begin(), buildings.end(),
                         [&](const Building& b) { return b.id == id; });
  return it == buildings.end() ? nullptr : &*it;
}

std::optional<std::size_t> HousingModel::detail_index(std::string_view id) const {
  auto it = std::find(detail_types.begin(), detail_types.end(), id);
  if (it == detail_types.end()) return std::nullopt;
  return static_cast<std::size_t>(it - detail_types.begin());
}

std::optional<Slot> locate(const TeamSchedule& schedule, std::string_view building) {
  for (std::size_t t = 0; t < schedule.teams.size(); ++t) {
    const auto& a = schedule.teams[t].assignments;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].building == building) return Slot{t, i};
    }
  }
  return std::nullopt;
}

namespace {

void check_unique(const std::vector<std::string>& ids, const std::string& what,
                  std::vector<Violation>& found) {
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (id.empty()) found.push_back({what, "empty id"});
    if (!seen.insert(id).second) found.push_back({what + " " + id, "duplicate id"});
  }
}

template <typename T>
std::vector<std::string> ids_of(const std::vector<T>& items) {
  std::vector<std::string> ids;
  for (const auto& item : items) ids.push_back(item.id);
  return ids;
}

}  // namespace

void validate_model(const HousingModel& model) {
  std::vector<Violation> found;
  const std::size_t floors = model.floor_types.size();
  const std::size_t details = model.detail_types.size();

  if (floors == 0) found.push_back({"floor types", "at least one required"});
  if (details == 0) found.push_back({"detail types", "at least one required"});
  check_unique(model.floor_types, "floor type", found);
  check_unique(model.detail_types, "detail type", found);
  check_unique(ids_of(model.sections), "section", found);
  check_unique(ids_of(model.building_types), "building type", found);
  check_unique(ids_of(model.buildings), "building", found);

  for (const auto& s : model.sections) {
    const std::string entity = "section " + s.id;
    if (s.details.size() != floors) {
      found.push_back({entity, "detail matrix needs one row per floor type"});
      continue;
    }
    for (const auto& row : s.details) {
      if (row.size() != details) found.push_back({entity, "detail matrix needs one column per detail type"});
      for (double v : row) {
        if (!(v >= 0.0)) found.push_back({entity, "negative detail count"});
      }
    }
  }

  for (const auto& bt : model.building_types) {
    const std::string entity = "building type " + bt.id;
    if (bt.floor_counts.size() != floors) found.push_back({entity, "one count per floor type required"});
    if (std::any_of(bt.floor_counts.begin(), bt.floor_counts.end(), [](int c) { return c < 0; })) {
      found.push_back({entity, "negative floor count"});
    }
    if (std::accumulate(bt.floor_counts.begin(), bt.floor_counts.end(), 0) < 1) {
      found.push_back({entity, "at least one floor unit required"});
    }
  }

  for (const auto& b : model.buildings) {
    const std::string entity = "building " + b.id;
    if (b.type >= model.building_types.size()) found.push_back({entity, "unknown building type"});
    if (b.section_counts.size() != model.sections.size()) {
      found.push_back({entity, "one count per section type required"});
    }
    if (std::any_of(b.section_counts.begin(), b.section_counts.end(), [](int c) { return c < 0; })) {
      found.push_back({entity, "negative section count"});
    }
    if (std::accumulate(b.section_counts.begin(), b.section_counts.end(), 0) < 1) {
      found.push_back({entity, "at least one section required"});
    }
    if (!(b.duration > 0.0)) found.push_back({entity, "duration must be positive"});
  }

  if (!found.empty()) throw ValidationError(std::move(found));
}

void validate_team_schedule(const HousingModel& model, const TeamSchedule& schedule) {
  std::vector<Violation> found;
  std::set<std::string> placed;
  check_unique(ids_of(schedule.teams), "team", found);

  for (const auto& team : schedule.teams) {
    std::vector<std::pair<double, double>> spans;
    for (const auto& a : team.assignments) {
      const Building* b = model.find_building(a.building);
      if (b == nullptr) {
        found.push_back({"team " + team.id, "unknown building " + a.building});
        continue;
      }
      if (!placed.insert(a.building).second) {
        found.push_back({"building " + a.building, "placed more than once"});
      }
      if (!(a.start >= 0.0)) found.push_back({"building " + a.building, "negative start"});
      spans.emplace_back(a.start, a.start + b->duration);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first < spans[i - 1].second - kTimeTolerance) {
        found.push_back({"team " + team.id, "overlapping assignments"});
      }
    }
  }

  if (!found.empty()) throw ValidationError(std::move(found));
}

std::vector<FloorRun> floor_sequence(const BuildingType& type) {
  std::vector<FloorRun> runs;
  for (std::size_t r = 0; r < type.floor_counts.size(); ++r) {
    if (type.floor_counts[r] > 0) runs.push_back({r, type.floor_counts[r]});
  }
  return runs;
}

int total_units(const BuildingType& type) {
  return std::accumulate(type.floor_counts.begin(), type.floor_counts.end(), 0);
}

double billed_units(const BuildingType& type, RateBasis basis) {
  const int units = total_units(type);
  return basis == RateBasis::Units ? units : units - 1;
}

std::vector<double> section_progress(const HousingModel& model, const Building& building,
                                     double start, int month) {
  const BuildingType& type = model.building_types.at(building.type);
  std::vector<double> progress(model.floor_types.size(), 0.0);

  const double lo = std::max(start, static_cast<double>(month - 1));
  const double hi = std::min(start + building.duration, static_cast<double>(month));
  if (hi <= lo) return progress;

  const double rate = billed_units(type, model.rate_basis) / building.duration;
  const double from = (lo - start) * rate;
  const double to = (hi - start) * rate;

  double offset = 0.0;
  for (const auto& run : floor_sequence(type)) {
    const double run_end = offset + run.count;
    const double covered = std::min(to, run_end) - std::max(from, offset);
    if (covered > 0.0) progress[run.floor] += covered;
    offset = run_end;
  }
  return progress;
}

MonthlyFloorProfile monthly_floor_requirements(const HousingModel& model,
                                               const TeamSchedule& schedule, int month) {
  MonthlyFloorProfile profile;
  profile.month = month;
  profile.by_section.assign(model.sections.size(),
                            std::vector<double>(model.floor_types.size(), 0.0));
  for (const auto& team : schedule.teams) {
    for (const auto& a : team.assignments) {
      const Building* b = model.find_building(a.building);
      if (b == nullptr) throw std::invalid_argument("unknown building " + a.building);
      const auto progress = section_progress(model, *b, a.start, month);
      for (std::size_t s = 0; s < model.sections.size(); ++s) {
        if (b->section_counts[s] == 0) continue;
        for (std::size_t r = 0; r < progress.size(); ++r) {
          profile.by_section[s][r] += b->section_counts[s] * progress[r];
        }
      }
    }
  }
  return profile;
}

CountVector monthly_detail_requirements(const HousingModel& model, const TeamSchedule& schedule,
                                        int month) {
  const auto profile = monthly_floor_requirements(model, schedule, month);
  CountVector gamma(model.detail_types.size());
  for (std::size_t s = 0; s < model.sections.size(); ++s) {
    const auto& bill = model.sections[s].details;
    for (std::size_t r = 0; r < model.floor_types.size(); ++r) {
      const double units = profile.by_section[s][r];
      if (units == 0.0) continue;
      for (std::size_t d = 0; d < gamma.size(); ++d) gamma[d] += units * bill[r][d];
    }
  }
  return gamma;
}

std::vector<double> detail_shares(const CountVector& requirement) {
  const double total = requirement.total();
  if (!(total > 0.0)) throw std::invalid_argument("empty month");
  std::vector<double> shares(requirement.size());
  for (std::size_t d = 0; d < shares.size(); ++d) shares[d] = 100.0 * requirement[d] / total;
  return shares;
}

RequirementTable horizon_requirement_table(const HousingModel& model,
                                           const TeamSchedule& schedule, int months) {
  RequirementTable table;
  table.rows.reserve(static_cast<std::size_t>(std::max(months, 0)));
  for (int m = 1; m <= months; ++m) {
    table.rows.push_back(monthly_detail_requirements(model, schedule, m));
  }
  return table;
}

int peak_month(const RequirementTable& table, std::size_t detail) {
  int best = 0;
  double peak = -1.0;
  for (std::size_t m = 0; m < table.rows.size(); ++m) {
    if (table.rows[m][detail] > peak) {
      peak = table.rows[m][detail];
      best = static_cast<int>(m) + 1;
    }
  }
  return best;
}

const ComparisonCell& ComparisonReport::at(int month, std::size_t detail) const {
  for (const auto& c : cells) {
    if (c.month == month && c.detail == detail) return c;
  }
  throw std::out_of_range(fmt::format("no comparison cell for month {} detail {}", month, detail));
}

ComparisonReport compare_requirements(const RequirementTable& computed,
                                      const RequirementTable& reference) {
  if (computed.rows.size() != reference.rows.size()) {
    throw std::invalid_argument("requirement tables cover different horizons");
  }
  ComparisonReport report;
  for (std::size_t m = 0; m < computed.rows.size(); ++m) {
    const auto& c = computed.rows[m];
    const auto& r = reference.rows[m];
    if (c.size() != r.size()) throw std::invalid_argument("requirement tables differ in width");
    for (std::size_t d = 0; d < c.size(); ++d) {
      ComparisonCell cell;
      cell.month = static_cast<int>(m) + 1;
      cell.detail = d;
      cell.computed = c[d];
      cell.reference = r[d];
      cell.abs_dev = std::abs(c[d] - r[d]);
      if (r[d] != 0.0) cell.rel_dev = cell.abs_dev / std::abs(r[d]);
      report.cells.push_back(cell);
    }
  }
  return report;
}

}  // namespace modbal
