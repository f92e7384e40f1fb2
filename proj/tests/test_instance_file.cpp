#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "modbal/fixtures.hpp"
#include "modbal/instance_file.hpp"

using namespace modbal;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("modbal_test_" + name);
}

InstanceFile random_abstract(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(1, 4);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  InstanceFile f;
  f.name = "random-abstract";
  SlotModelData d;
  const int types = small(rng) + 1;
  for (int t = 0; t < types; ++t) d.universe.types.push_back("E" + std::to_string(t));
  d.universe.idle_index = static_cast<std::size_t>(types - 1);
  const int jobs = small(rng);
  for (int j = 0; j < jobs; ++j) {
    CompositeJob job{"j" + std::to_string(j), {}};
    for (int k = small(rng); k > 0; --k) job.chain.push_back(static_cast<std::size_t>(rng() % (types - 1)));
    d.jobs.push_back(std::move(job));
  }
  d.grid = {static_cast<std::size_t>(small(rng)), static_cast<std::size_t>(small(rng) + 4)};
  d.schedule.horizon_slots = d.grid.covered_slots();
  const int procs = small(rng);
  for (int p = 0; p < procs; ++p) {
    d.schedule.processors.push_back("P" + std::to_string(p));
    d.schedule.placements.emplace_back();
  }
  for (int j = 0; j < jobs; ++j) {
    d.schedule.placements[static_cast<std::size_t>(j % procs)].push_back({"j" + std::to_string(j), rng() % 5});
  }
  if (rng() % 2) {
    std::vector<double> e0(static_cast<std::size_t>(types));
    for (auto& x : e0) x = static_cast<double>(rng() % 4);
    d.reference_profile = CountVector(e0);
  }
  if (rng() % 2) d.delta_max = real(rng);
  f.slot_model = std::move(d);
  if (rng() % 2) {
    WindowData w;
    w.weights = {real(rng), real(rng)};
    for (int j = small(rng); j > 0; --j) {
      const double open = real(rng);
      w.jobs.push_back({"w" + std::to_string(j), real(rng), open, open + real(rng), rng() % 3 + 1, rng() % 4 + 1});
    }
    f.windows = std::move(w);
  }
  f.improve.budget = real(rng);
  return f;
}

InstanceFile random_homebuilding(std::mt19937& rng) {
  std::uniform_int_distribution<int> small(1, 4);
  std::uniform_real_distribution<double> real(0.1, 12.0);
  InstanceFile f;
  f.name = "random-homebuilding";
  f.mode = Mode::Homebuilding;
  HomebuildingData d;
  d.first_month = "2001-03";
  HousingModel& m = d.model;
  m.months = static_cast<std::size_t>(small(rng) + 3);
  m.rate_basis = rng() % 2 ? RateBasis::Units : RateBasis::UnitsMinusOne;
  const int floors = small(rng), details = small(rng), sections = small(rng);
  for (int r = 0; r < floors; ++r) m.floor_types.push_back("r" + std::to_string(r));
  for (int k = 0; k < details; ++k) m.detail_types.push_back("d" + std::to_string(k));
  for (int s = 0; s < sections; ++s) {
    SectionType st{"s" + std::to_string(s), {}};
    for (int r = 0; r < floors; ++r) {
      std::vector<double> row;
      for (int k = 0; k < details; ++k) row.push_back(std::floor(real(rng)));
      st.details.push_back(row);
    }
    m.sections.push_back(st);
  }
  BuildingType bt{"t0", {}};
  for (int r = 0; r < floors; ++r) bt.floor_counts.push_back(small(rng));
  m.building_types.push_back(bt);
  d.schedule.teams.push_back({"T1", {}});
  for (int b = small(rng); b > 0; --b) {
    Building bd{"b" + std::to_string(b), "L" + std::to_string(b), 0, {}, real(rng), real(rng)};
    for (int s = 0; s < sections; ++s) bd.section_counts.push_back(static_cast<int>(rng() % 3));
    m.buildings.push_back(bd);
    d.schedule.teams[0].assignments.push_back({bd.id, real(rng)});
  }
  std::vector<double> cap;
  for (int k = 0; k < details; ++k) cap.push_back(rng() % 2 ? real(rng) * 100 : std::numeric_limits<double>::infinity());
  d.capacity = CountVector(cap);
  if (rng() % 2) {
    RequirementTable t;
    for (std::size_t mo = 0; mo < m.months; ++mo) {
      std::vector<double> row;
      for (int k = 0; k < details; ++k) row.push_back(real(rng));
      t.rows.emplace_back(row);
    }
    d.reference = t;
  }
  if (rng() % 2) {
    ExplicitCorrections ec{real(rng), {}};
    ec.groups.push_back({1, {"b1"}, {{}, {MoveKind::ShiftLeft, "b1", {}, 3, real(rng), real(rng)}}});
    ec.groups.push_back({2, {"b1", "b2"}, {{}, {MoveKind::Exchange, "b1", "b2", 0, -real(rng), 2.0}}});
    d.corrections = ec;
  }
  f.homebuilding = std::move(d);
  f.improve.selector = rng() % 2 ? Selector::Exact : Selector::Greedy;
  f.improve.config.shift_days = {real(rng)};
  f.improve.config.weights = {real(rng)};
  f.improve.config.exchanges = rng() % 2;
  return f;
}

std::string schema_path(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST_SUITE("instance_file") {
  TEST_CASE("bundled kope-1982 shape") {
    const auto f = parse_instance(serialize_instance(fixture("kope-1982")));
    REQUIRE(f.homebuilding.has_value());
    CHECK(f.mode == Mode::Homebuilding);
    CHECK(f.homebuilding->model.buildings.size() == 9);
    CHECK(f.homebuilding->schedule.teams.size() == 8);
    CHECK(f.homebuilding->model.months == 19);
    CHECK(f.homebuilding->reference->months() == 19);
    CHECK(std::isinf(f.homebuilding->capacity[1]));
    CHECK(f.homebuilding->capacity[0] == 1480.0);
  }

  TEST_CASE("fixture files on disk match the built-in definitions") {
    for (const auto& info : fixture_catalog()) {
      const auto path = std::filesystem::path(MODBAL_SOURCE_DIR) / "fixtures" / (info.name + ".json");
      INFO(info.name);
      REQUIRE(std::filesystem::exists(path));
      CHECK(read_file(path) == serialize_instance(fixture(info.name)));
      CHECK(load_instance(path) == fixture(info.name));
    }
  }

  TEST_CASE("round trip of every fixture through a file") {
    for (const auto& info : fixture_catalog()) {
      const auto path = temp_path(info.name + ".json");
      save_instance(fixture(info.name), path);
      CHECK(load_instance(path) == fixture(info.name));
      std::filesystem::remove(path);
    }
  }

  TEST_CASE("round trip of random instances") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 200; ++i) {
      const auto f = i % 2 ? random_abstract(rng) : random_homebuilding(rng);
      const auto text = serialize_instance(f);
      const auto back = parse_instance(text);
      CHECK(back == f);
      CHECK(serialize_instance(back) == text);
    }
  }

  TEST_CASE("truncated file reports a location") {
    const std::string text = serialize_instance(fixture("windows-1machine"));
    const std::string cut = text.substr(0, text.size() / 2);
    try {
      parse_instance(cut);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() > 1);
      CHECK(e.column() >= 1);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
    try {
      parse_instance("{\n  \"a\": [1,\n  2,, 3]\n}");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 5);
    }
  }

  TEST_CASE("schema errors carry JSON pointers") {
    CHECK(schema_path("{}") == "/format_version");
    CHECK(schema_path(R"({"format_version": 2, "mode": "abstract"})") == "/format_version");
    CHECK(schema_path(R"({"format_version": 1, "mode": "x"})") == "/mode");
    CHECK(schema_path(R"({"format_version": 1, "mode": "abstract"})") == "");

    auto doc = serialize_instance(fixture("kope-1982"));
    auto bad = doc;
    bad.replace(bad.find("\"duration\": 9.0"), 15, "\"duration\": \"9\"");
    CHECK(schema_path(bad) == "/homebuilding/buildings/0/duration");
    bad = doc;
    bad.replace(bad.find("\"type\": \"h22\""), 13, "\"type\": \"h99\"");
    CHECK(schema_path(bad) == "/homebuilding/buildings/1/type");
    bad = doc;
    bad.replace(bad.find("\"capacity\": ["), 13, "\"capacity\": [-1,");
    CHECK(schema_path(bad) == "/homebuilding/capacity");

    const auto windows = serialize_instance(fixture("windows-1machine"));
    bad = windows;
    bad.replace(bad.find("\"processing_time\""), 17, "\"processing_tim\"");
    CHECK(schema_path(bad) == "/windows/jobs/0/processing_time");
  }

  TEST_CASE("missing files are I/O errors") {
    CHECK_THROWS_AS(load_instance("/nonexistent/dir/x.json"), IoError);
    CHECK_THROWS_AS(save_instance(fixture("windows-1machine"), "/nonexistent/dir/x.json"), IoError);
  }

  TEST_CASE("validate_file runs every validator") {
    for (const auto& info : fixture_catalog()) CHECK_NOTHROW(validate_file(fixture(info.name)));
    auto f = fixture("kope-1982");
    f.homebuilding->schedule.teams[3].assignments[1].start = 12.0;  // a9 runs past month 19
    CHECK_THROWS_AS(validate_file(f), ValidationError);
    auto g = fixture("modular-3proc");
    g.slot_model->schedule.placements[0][1].start = 3;
    CHECK_THROWS_AS(validate_file(g), ValidationError);
  }
}
