#pragma once

// Home-building requirement cascade.
//
// A building is a multiset of architectural sections; every section is
// raised floor by floor, bottom-up, through the floor types of its building
// type. Each (section, floor type) pair carries a bill of structural
// details. Given a team schedule in continuous months, the cascade turns
// building progress into monthly floor requirements per section and then
// into monthly detail requirements, the quantity compared against the
// factory's per-detail productivity.
//
// Progress is linear in time. A section with U floor units finishes
// billed_units(U) units over the assembly duration, where the default basis
// counts U - 1 units (the top unit is not billed to the schedule).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modbal/balance.hpp"

namespace modbal {

/// Days per calendar month used for shift moves.
inline constexpr double kDaysPerMonth = 30.0;

/// Overlap tolerance for team occupancy intervals, in months.
inline constexpr double kTimeTolerance = 1e-9;

enum class RateBasis { Units, UnitsMinusOne };

struct SectionType {
  std::string id;
  std::vector<std::vector<double>> details;  // [floor type][detail type], per floor unit

  bool operator==(const SectionType&) const = default;
};

struct BuildingType {
  std::string id;
  std::vector<int> floor_counts;  // per floor type, bottom-up order

  bool operator==(const BuildingType&) const = default;
};

struct Building {
  std::string id;
  std::string label;
  std::size_t type = 0;              // index into HousingModel::building_types
  std::vector<int> section_counts;   // per section type
  double duration = 1.0;             // months
  double general_square = 0.0;       // informational

  bool operator==(const Building&) const = default;
};

struct HousingModel {
  std::vector<std::string> floor_types;
  std::vector<std::string> detail_types;
  std::vector<SectionType> sections;
  std::vector<BuildingType> building_types;
  std::vector<Building> buildings;
  std::size_t months = 0;
  RateBasis rate_basis = RateBasis::UnitsMinusOne;

  const Building* find_building(std::string_view id) const;
  std::optional<std::size_t> detail_index(std::string_view id) const;

  bool operator==(const HousingModel&) const = default;
};

struct TeamAssignment {
  std::string building;
  double start = 0.0;  // months from the start of the horizon

  bool operator==(const TeamAssignment&) const = default;
};

struct Team {
  std::string id;
  std::vector<TeamAssignment> assignments;

  bool operator==(const Team&) const = default;
};

struct TeamSchedule {
  std::vector<Team> teams;

  bool operator==(const TeamSchedule&) const = default;
};

/// Location of a placed building inside a team schedule.
struct Slot {
  std::size_t team = 0;
  std::size_t index = 0;
};

std::optional<Slot> locate(const TeamSchedule& schedule, std::string_view building);

/// Throws ValidationError when matrices are incomplete or negative,
/// references dangle, ids repeat, or a building has no sections or a
/// non-positive duration.
void validate_model(const HousingModel& model);

/// Throws ValidationError when a building is unknown or placed twice, a
/// start is negative, or two buildings of one team overlap.
void validate_team_schedule(const HousingModel& model, const TeamSchedule& schedule);

struct FloorRun {
  std::size_t floor = 0;
  int count = 0;

  bool operator==(const FloorRun&) const = default;
};

/// Floor types with non-zero count, bottom-up.
std::vector<FloorRun> floor_sequence(const BuildingType& type);
int total_units(const BuildingType& type);

/// Floor units one section completes over the whole assembly.
double billed_units(const BuildingType& type, RateBasis basis);

/// Fractional floor units completed by one section of `building` during
/// month `month` (1-based, covering [month-1, month)).
std::vector<double> section_progress(const HousingModel& model, const Building& building,
                                     double start, int month);

/// Floor units per [section type][floor type] required in one month.
struct MonthlyFloorProfile {
  int month = 0;
  std::vector<std::vector<double>> by_section;
};

MonthlyFloorProfile monthly_floor_requirements(const HousingModel& model,
                                               const TeamSchedule& schedule, int month);

/// Detail requirement of one month: the floor profile multiplied through
/// every section's detail bill.
CountVector monthly_detail_requirements(const HousingModel& model, const TeamSchedule& schedule,
                                        int month);

/// Percent share of every detail type; throws std::invalid_argument
/// ("empty month") when the vector sums to zero.
std::vector<double> detail_shares(const CountVector& requirement);

/// rows[m-1] holds the detail requirement of month m.
struct RequirementTable {
  std::vector<CountVector> rows;

  std::size_t months() const noexcept { return rows.size(); }
  bool operator==(const RequirementTable&) const = default;
};

RequirementTable horizon_requirement_table(const HousingModel& model,
                                           const TeamSchedule& schedule, int months);

inline RequirementTable horizon_requirement_table(const HousingModel& model,
                                                  const TeamSchedule& schedule) {
  return horizon_requirement_table(model, schedule, static_cast<int>(model.months));
}

/// Month with the largest requirement for one detail (1-based; first on ties).
int peak_month(const RequirementTable& table, std::size_t detail);

struct ComparisonCell {
  int month = 0;
  std::size_t detail = 0;
  double computed = 0.0;
  double reference = 0.0;
  double abs_dev = 0.0;
  std::optional<double> rel_dev;  // empty when the reference cell is zero
};

struct ComparisonReport {
  std::vector<ComparisonCell> cells;  // month-major

  const ComparisonCell& at(int month, std::size_t detail) const;
};

/// Cell-by-cell comparison of a computed table against a reference table of
/// the same shape.
ComparisonReport compare_requirements(const RequirementTable& computed,
                                      const RequirementTable& reference);

}  // namespace modbal
