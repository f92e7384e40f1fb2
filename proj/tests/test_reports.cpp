#include <sstream>

#include "doctest.h"
#include "modbal/reports.hpp"
#include "support.hpp"

using namespace modbal;
using support::kope;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string row_of(const std::string& chart, const std::string& team) {
  for (const auto& l : lines(chart)) {
    if (l.rfind(team + " ", 0) == 0) return l;
  }
  return {};
}

// Months whose cell holds `id`, read from the chart text.
std::vector<int> months_of(const std::string& chart, const std::string& team, const std::string& id) {
  std::istringstream in(row_of(chart, team));
  std::string token;
  in >> token >> token;  // team id, separator
  std::vector<int> out;
  for (int m = 1; in >> token; ++m) {
    if (token == id) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_SUITE("reports") {
  TEST_CASE("balance curve of the reference table") {
    const auto d = kope();
    const auto csv = balance_curve_csv(*d.reference, 1480.0, 0);
    const auto l = lines(csv);
    REQUIRE(l.size() == 20);
    CHECK(l[0] == "month,required,capacity,violation");
    CHECK(l[12] == "12,1562.00,1480.00,82.00");
    CHECK(l[1] == "1,79.00,1480.00,0.00");
    CHECK_THROWS_AS(balance_curve_csv(*d.reference, 1480.0, 8), std::out_of_range);
  }

  TEST_CASE("empty schedule has no violation") {
    auto d = kope();
    d.schedule.teams.clear();
    const auto l = lines(balance_curve_csv(horizon_requirement_table(d.model, d.schedule), 1480.0, 0));
    REQUIRE(l.size() == 20);
    for (std::size_t i = 1; i < l.size(); ++i) CHECK(l[i].substr(l[i].rfind(',')) == ",0.00");
  }

  TEST_CASE("requirements and comparison CSV shape") {
    const auto d = kope();
    const auto table = horizon_requirement_table(d.model, d.schedule);
    const auto req = lines(requirements_csv(d.model, table));
    REQUIRE(req.size() == 20);
    CHECK(req[0] == "month,d1,d2,d3,d4,d5,d6,d7,d8");
    CHECK(req[1].rfind("1,", 0) == 0);
    const auto cmp = lines(comparison_csv(d.model, compare_requirements(table, *d.reference)));
    CHECK(cmp.size() == 1 + 19 * 8);
    CHECK(cmp[0] == "month,detail,computed,reference,abs_dev,rel_dev");
  }

  TEST_CASE("gantt of the initial schedule") {
    const auto d = kope();
    const auto chart = render_gantt(d.model, d.schedule);
    CHECK(lines(chart).size() == 1 + 8);
    CHECK(months_of(chart, "P5", "a5") == std::vector<int>{9, 10, 11, 12, 13, 14, 15});
    CHECK(months_of(chart, "P3", "a1") == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(months_of(chart, "P3", "a6") == std::vector<int>{10, 11, 12});
    CHECK(months_of(chart, "P1", ".").size() == 19);
    CHECK(render_gantt(d.model, d.schedule) == chart);
  }

  TEST_CASE("gantt of empty and single schedules") {
    auto d = kope();
    d.schedule.teams = {{"T1", {}}, {"T2", {}}};
    auto chart = render_gantt(d.model, d.schedule);
    CHECK(months_of(chart, "T1", ".").size() == 19);
    CHECK(months_of(chart, "T2", ".").size() == 19);

    d.schedule.teams[1].assignments.push_back({"a6", 2.0});
    chart = render_gantt(d.model, d.schedule);
    CHECK(months_of(chart, "T2", "a6") == std::vector<int>{3, 4, 5});

    // too short to cross a month boundary
    d.model.buildings[5].duration = 0.5;
    d.schedule.teams[1].assignments[0].start = 4.2;
    chart = render_gantt(d.model, d.schedule);
    CHECK(months_of(chart, "T2", "a6") == std::vector<int>{5});
  }
}
