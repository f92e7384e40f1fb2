#pragma once

// CSV exports and the text Gantt chart. All numbers are printed with two
// decimals so outputs are byte-stable.

#include <cstddef>
#include <filesystem>
#include <string>

#include "modbal/homebuilding.hpp"

namespace modbal {

/// month,<detail ids...>; one row per month.
std::string requirements_csv(const HousingModel& model, const RequirementTable& table);

/// month,required,capacity,violation for one detail. An infinite capacity
/// prints as "inf". Throws std::out_of_range for a bad detail index.
std::string balance_curve_csv(const RequirementTable& table, double capacity, std::size_t detail);

/// month,detail,computed,reference,abs_dev,rel_dev (rel_dev empty when the
/// reference cell is zero).
std::string comparison_csv(const HousingModel& model, const ComparisonReport& report);

/// Throws IoError when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

void export_requirements_csv(const HousingModel& model, const RequirementTable& table,
                             const std::filesystem::path& path);
void export_balance_curve(const RequirementTable& table, double capacity, std::size_t detail,
                          const std::filesystem::path& path);

/// One line per team with one cell per month. A building occupies month m
/// when start < m <= end; a building too short to cross a month boundary
/// takes the cell of the month it starts in if that cell is free.
std::string render_gantt(const HousingModel& model, const TeamSchedule& schedule);

}  // namespace modbal
