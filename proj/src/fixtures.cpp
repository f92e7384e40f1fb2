#include "modbal/fixtures.hpp"

#include <limits>
#include <stdexcept>

namespace modbal {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix repeat_rows(std::initializer_list<std::pair<int, std::vector<double>>> runs) {
  Matrix m;
  for (const auto& [n, row] : runs) {
    for (int i = 0; i < n; ++i) m.push_back(row);
  }
  return m;
}

const std::vector<double> kZero(8, 0.0);

InstanceFile modular_3proc() {
  InstanceFile f;
  f.name = "modular-3proc";
  f.mode = Mode::Abstract;
  SlotModelData d;
  d.universe.types = {"D1", "D2", "D3", "D4", "D5", "D6"};
  d.universe.idle_index = 5;
  const std::vector<ElementIndex> a1{0, 1, 2}, a2{1, 4}, a3{0, 1, 3, 4}, a4{0, 1, 1, 2, 3, 4};
  d.jobs = {{"a1", a1},   {"a2", a2},   {"a3/1", a3}, {"a3/2", a3},
            {"a3/3", a3}, {"a3/4", a3}, {"a4/1", a4}, {"a4/2", a4}};
  d.grid = {3, 4};
  d.schedule.processors = {"P1", "P2", "P3"};
  d.schedule.placements = {
      {{"a4/1", 0}, {"a4/2", 6}},
      {{"a2", 0}, {"a3/1", 3}, {"a3/2", 8}},
      {{"a3/3", 0}, {"a1", 4}, {"a3/4", 7}},
  };
  d.schedule.horizon_slots = 12;
  d.reference_profile = CountVector{2, 3, 2, 1, 1, 0};
  d.delta_max = 4.0;
  f.slot_model = std::move(d);
  return f;
}

InstanceFile windows_1machine() {
  InstanceFile f;
  f.name = "windows-1machine";
  f.mode = Mode::Abstract;
  WindowData w;
  w.jobs = {{"a1", 0.5, 0.0, 1.1, 1, 1}, {"a2", 0.6, 0.6, 1.6, 1, 2}, {"a3", 0.6, 1.2, 2.4, 1, 3},
            {"a4", 0.9, 1.8, 2.8, 1, 4}, {"a5", 0.7, 2.7, 3.7, 1, 5}, {"a6", 0.8, 3.5, 4.5, 1, 6},
            {"a7", 0.7, 4.0, 5.0, 1, 7}};
  f.windows = std::move(w);
  return f;
}

InstanceFile windows_3machine() {
  InstanceFile f;
  f.name = "windows-3machine";
  f.mode = Mode::Abstract;
  WindowData w;
  w.jobs = {{"a1", 1.2, 0.0, 1.5, 1, 1},  {"a2", 1.3, 1.0, 2.5, 1, 2},  {"a3", 1.2, 2.0, 4.0, 1, 3},
            {"a4", 1.1, 3.7, 5.0, 1, 4},  {"a5", 0.7, 0.0, 2.0, 2, 1},  {"a6", 0.6, 1.7, 2.7, 2, 2},
            {"a7", 0.7, 2.5, 4.0, 2, 3},  {"a8", 1.0, 3.9, 5.0, 2, 4},  {"a9", 1.2, 0.0, 1.5, 3, 1},
            {"a10", 1.3, 1.0, 2.5, 3, 2}, {"a11", 1.2, 2.6, 4.0, 3, 3}, {"a12", 1.2, 3.0, 5.0, 3, 4}};
  f.windows = std::move(w);
  return f;
}

HomebuildingData kope_data() {
  HomebuildingData d;
  d.first_month = "1982-01";
  HousingModel& m = d.model;
  m.months = 19;
  m.floor_types = {"r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8"};
  m.detail_types = {"d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8"};

  const Matrix g12 = repeat_rows({{1, kZero},
                                  {1, {19, 28, 21, 0, 0, 2, 2, 1}},
                                  {1, {16, 0, 27, 19, 0, 2, 5, 1}},
                                  {3, {16, 0, 27, 19, 0, 2, 6, 1}},
                                  {1, {20, 0, 33, 6, 22, 1, 5, 0}},
                                  {1, {10, 0, 3, 0, 6, 0, 1, 0}}});
  const Matrix g5 = repeat_rows({{1, kZero},
                                 {1, {21, 30, 0, 24, 0, 2, 2, 1}},
                                 {1, {18, 0, 30, 22, 0, 2, 5, 1}},
                                 {1, {19, 0, 29, 22, 0, 2, 6, 1}},
                                 {2, {18, 0, 30, 22, 0, 2, 6, 1}},
                                 {1, {23, 0, 38, 6, 26, 1, 5, 0}},
                                 {1, {10, 0, 3, 0, 6, 0, 1, 0}}});
  const Matrix g9 = repeat_rows({{1, kZero},
                                 {1, {22, 28, 0, 24, 0, 2, 2, 1}},
                                 {1, {19, 0, 27, 22, 0, 2, 5, 1}},
                                 {3, {19, 0, 27, 22, 0, 2, 6, 1}},
                                 {1, {25, 0, 45, 6, 29, 1, 5, 0}},
                                 {1, {10, 0, 3, 0, 6, 0, 1, 0}}});
  const Matrix w1 = repeat_rows({{1, {2, 2, 0, 0, 0, 0, 0, 0}},
                                 {1, {1, 2, 0, 0, 0, 0, 0, 2}},
                                 {3, {1, 0, 2, 0, 0, 0, 0, 2}},
                                 {1, {1, 0, 2, 0, 0, 0, 0, 1}},
                                 {1, {0, 0, 2, 0, 0, 0, 0, 2}},
                                 {1, kZero}});
  const Matrix w2 = repeat_rows({{2, {0, 1, 0, 0, 0, 0, 0, 0}}, {4, {0, 0, 1, 0, 0, 0, 0, 0}}, {2, kZero}});
  const Matrix w3 = repeat_rows({{2, {1, 1, 0, 0, 0, 0, 0, 0}}, {5, {1, 0, 1, 0, 0, 0, 0, 0}}, {1, kZero}});
  const Matrix w6 = repeat_rows({{1, {3, 2, 0, 0, 0, 0, 0, 0}},
                                 {1, {3, 2, 0, 0, 0, 0, 0, 2}},
                                 {3, {3, 0, 2, 0, 0, 0, 0, 2}},
                                 {1, {3, 0, 2, 0, 0, 0, 0, 1}},
                                 {1, {2, 0, 3, 0, 0, 0, 0, 1}},
                                 {1, kZero}});
  const Matrix w7 = repeat_rows({{1, {3, 2, 0, 0, 0, 0, 0, 0}},
                                 {4, {3, 2, 0, 0, 0, 0, 0, 2}},
                                 {2, {3, 2, 0, 0, 0, 0, 0, 1}},
                                 {1, kZero}});
  m.sections = {{"g1", g12}, {"g2", g12}, {"g5", g5}, {"g9", g9}, {"w1", w1},
                {"w2", w2},  {"w3", w3},  {"w6", w6}, {"w7", w7}};

  m.building_types = {{"h18", {0, 1, 0, 11, 5, 1, 1, 1}}, {"h22", {0, 1, 4, 11, 5, 1, 1, 1}}};
  m.buildings = {
      {"a1", "V1A", 0, {2, 1, 1, 0, 3, 0, 4, 0, 0}, 9.0, 17.5},
      {"a2", "V2", 1, {0, 2, 0, 1, 1, 1, 4, 0, 1}, 6.2, 16.4},
      {"a3", "V5A", 0, {1, 1, 1, 0, 2, 0, 4, 0, 0}, 4.5, 13.3},
      {"a4", "V6A", 0, {0, 1, 1, 1, 1, 1, 6, 0, 0}, 4.8, 17.7},
      {"a5", "B6B", 1, {0, 1, 1, 2, 1, 2, 8, 0, 0}, 6.4, 24.0},
      {"a6", "V2A", 1, {2, 1, 1, 0, 1, 1, 4, 0, 0}, 3.0, 11.3},
      {"a7", "B2A", 1, {1, 1, 0, 1, 1, 1, 5, 0, 1}, 4.3, 16.3},
      {"a8", "B2B", 1, {1, 1, 1, 1, 2, 1, 6, 0, 0}, 6.1, 22.7},
      {"a9", "B4", 1, {1, 1, 1, 2, 2, 2, 7, 0, 0}, 7.8, 29.0},
  };

  d.schedule.teams = {
      {"P1", {}},
      {"P2", {{"a4", 7.0}, {"a7", 11.8}}},
      {"P3", {{"a1", 0.5}, {"a6", 9.5}}},
      {"P4", {{"a3", 6.5}, {"a9", 11.0}}},
      {"P5", {{"a5", 8.8}}},
      {"P6", {{"a2", 8.0}}},
      {"P7", {}},
      {"P8", {{"a8", 9.7}}},
  };

  const double inf = std::numeric_limits<double>::infinity();
  d.capacity = CountVector{1480, inf, inf, inf, inf, inf, inf, inf};

  const CountVector steady{137, 0, 253, 166, 0, 16, 50, 8};
  d.reference = RequirementTable{{
      {79, 122, 27, 70, 0, 8, 9, 4},
      steady,
      steady,
      steady,
      steady,
      steady,
      {250, 92, 377, 279, 0, 29, 77, 14},
      {576, 93, 932, 659, 0, 66, 187, 41},
      {842, 181, 1300, 912, 0, 94, 251, 72},
      {1250, 222, 1866, 1277, 109, 129, 347, 101},
      {1468, 18, 2448, 1615, 84, 158, 461, 122},
      {1562, 231, 2385, 1654, 94, 164, 459, 139},
      {1446, 0, 2418, 1589, 59, 155, 452, 146},
      {1296, 0, 2187, 1452, 26, 142, 428, 138},
      {1156, 0, 1938, 1244, 80, 121, 373, 114},
      {965, 0, 1554, 810, 305, 83, 279, 76},
      {289, 0, 453, 305, 16, 29, 90, 26},
      {261, 0, 447, 305, 0, 29, 88, 26},
      {276, 0, 409, 164, 154, 17, 68, 13},
  }};
  return d;
}

InstanceFile kope_1982() {
  InstanceFile f;
  f.name = "kope-1982";
  f.mode = Mode::Homebuilding;
  f.homebuilding = kope_data();
  f.improve.budget = 5.0;
  f.improve.max_iterations = 50;
  return f;
}

CorrectionVariant right(const char* building, double days, double profit, double cost) {
  return {MoveKind::ShiftRight, building, {}, days, profit, cost};
}

InstanceFile kope_1982_corrections() {
  InstanceFile f = kope_1982();
  f.name = "kope-1982-corrections";
  ExplicitCorrections ec;
  ec.budget = 3.0;
  ec.groups = {
      {1,
       {"a6"},
       {{}, right("a6", 3, 0.5, 1.0), right("a6", 7, 1.5, 2.0), right("a6", 14, 2.5, 3.0),
        right("a6", 21, 3.5, 4.0)}},
      {2, {"a7"}, {{}, right("a7", 3, 0.3, 0.5), right("a7", 7, 1.0, 0.8), right("a7", 14, 1.5, 1.0)}},
      {3, {"a8"}, {{}, right("a8", 7, 1.5, 1.0), right("a8", 14, 2.5, 1.5), right("a8", 21, 3.5, 2.0)}},
      {4, {"a3", "a6"}, {{}, {MoveKind::Exchange, "a3", "a6", 0.0, 1.5, 2.0}}},
  };
  f.homebuilding->corrections = std::move(ec);
  return f;
}

struct Entry {
  const char* name;
  const char* summary;
  InstanceFile (*make)();
};

const Entry kEntries[] = {
    {"modular-3proc", "six element types, four composite jobs on three processors, 4 intervals of 3 slots",
     modular_3proc},
    {"windows-1machine", "seven window jobs in sequence on one machine", windows_1machine},
    {"windows-3machine", "twelve window jobs, four per machine on three machines", windows_3machine},
    {"kope-1982", "nine buildings on eight teams over 19 months, d1 capacity 1480", kope_1982},
    {"kope-1982-corrections", "kope-1982 with four explicit correction groups and budget 3.0",
     kope_1982_corrections},
};

}  // namespace

std::vector<FixtureInfo> fixture_catalog() {
  std::vector<FixtureInfo> out;
  for (const auto& e : kEntries) out.push_back({e.name, e.summary});
  return out;
}

InstanceFile fixture(std::string_view name) {
  for (const auto& e : kEntries) {
    if (name == e.name) return e.make();
  }
  throw std::invalid_argument("unknown fixture " + std::string(name));
}

}  // namespace modbal
