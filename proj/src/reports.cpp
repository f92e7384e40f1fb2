#include "modbal/reports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/core.h>

#include "modbal/instance_file.hpp"

namespace modbal {

namespace {

std::string fixed(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  const std::string s = fmt::format("{:.2f}", v);
  return s == "-0.00" ? "0.00" : s;
}

}  // namespace

std::string requirements_csv(const HousingModel& model, const RequirementTable& table) {
  std::string out = "month";
  for (const auto& d : model.detail_types) out += "," + d;
  out += "\n";
  for (std::size_t m = 0; m < table.rows.size(); ++m) {
    out += std::to_string(m + 1);
    for (double v : table.rows[m].values()) out += "," + fixed(v);
    out += "\n";
  }
  return out;
}

std::string balance_curve_csv(const RequirementTable& table, double capacity, std::size_t detail) {
  std::string out = "month,required,capacity,violation\n";
  for (std::size_t m = 0; m < table.rows.size(); ++m) {
    if (detail >= table.rows[m].size()) throw std::out_of_range("detail index out of range");
    const double required = table.rows[m][detail];
    const double excess = std::max(0.0, required - capacity);
    out += fmt::format("{},{},{},{}\n", m + 1, fixed(required), fixed(capacity), fixed(excess));
  }
  return out;
}

std::string comparison_csv(const HousingModel& model, const ComparisonReport& report) {
  std::string out = "month,detail,computed,reference,abs_dev,rel_dev\n";
  for (const auto& c : report.cells) {
    out += fmt::format("{},{},{},{},{},{}\n", c.month, model.detail_types.at(c.detail), fixed(c.computed),
                       fixed(c.reference), fixed(c.abs_dev), c.rel_dev ? fmt::format("{:.4f}", *c.rel_dev) : "");
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

void export_requirements_csv(const HousingModel& model, const RequirementTable& table,
                             const std::filesystem::path& path) {
  write_text(path, requirements_csv(model, table));
}

void export_balance_curve(const RequirementTable& table, double capacity, std::size_t detail,
                          const std::filesystem::path& path) {
  write_text(path, balance_curve_csv(table, capacity, detail));
}

std::string render_gantt(const HousingModel& model, const TeamSchedule& schedule) {
  const std::size_t months = model.months;
  std::size_t width = 2;
  for (const auto& b : model.buildings) width = std::max(width, b.id.size());
  width = std::max(width, std::to_string(months).size());
  std::size_t label = 4;
  for (const auto& t : schedule.teams) label = std::max(label, t.id.size());

  std::string out = fmt::format("{:<{}} |", "team", label);
  for (std::size_t m = 1; m <= months; ++m) out += fmt::format(" {:>{}}", m, width);
  out += "\n";

  for (const auto& team : schedule.teams) {
    std::vector<std::string> cells(months);
    for (const auto& a : team.assignments) {
      const Building* b = model.find_building(a.building);
      if (b == nullptr) continue;
      const double end = a.start + b->duration;
      bool placed = false;
      for (std::size_t m = 1; m <= months; ++m) {
        const auto t = static_cast<double>(m);
        if (a.start < t && t <= end + kTimeTolerance && cells[m - 1].empty()) {
          cells[m - 1] = b->id;
          placed = true;
        }
      }
      if (!placed) {
        const auto m = static_cast<std::size_t>(std::max(0.0, std::floor(a.start)) + 1.0);
        if (m <= months && cells[m - 1].empty()) cells[m - 1] = b->id;
      }
    }
    out += fmt::format("{:<{}} |", team.id, label);
    for (const auto& c : cells) out += fmt::format(" {:>{}}", c.empty() ? "." : c, width);
    out += "\n";
  }
  return out;
}

}  // namespace modbal
