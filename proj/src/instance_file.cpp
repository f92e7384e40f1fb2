#include "modbal/instance_file.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/core.h>

#include "json.hpp"

namespace modbal {

using json = nlohmann::ordered_json;

std::string to_string(Mode mode) {
  return mode == Mode::Homebuilding ? "homebuilding" : "abstract";
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(fmt::format("parse error at line {}, column {}: {}", line, column, message)),
      line_(line),
      column_(column) {}

SchemaError::SchemaError(std::string path, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", path.empty() ? "/" : path, message)),
      path_(std::move(path)) {}

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// A JSON value together with its pointer, for error reporting.
class Node {
 public:
  Node(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  [[noreturn]] void fail(const std::string& message) const { throw SchemaError(path_, message); }

  bool has(const char* key) const { return value_.contains(key) && !value_.at(key).is_null(); }

  Node at(const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    if (!value_.contains(key)) throw SchemaError(child_path(key), "required field missing");
    return {value_.at(key), child_path(key)};
  }

  std::optional<Node> opt(const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    if (!has(key)) return std::nullopt;
    return Node{value_.at(key), child_path(key)};
  }

  std::vector<Node> items() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "/" + std::to_string(i));
    }
    return out;
  }

  std::vector<std::pair<std::string, Node>> members() const {
    if (!value_.is_object()) fail("expected an object");
    std::vector<std::pair<std::string, Node>> out;
    for (auto it = value_.begin(); it != value_.end(); ++it) {
      out.emplace_back(it.key(), Node{it.value(), child_path(it.key())});
    }
    return out;
  }

  bool is_null() const { return value_.is_null(); }

  std::string str() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  double num() const {
    if (!value_.is_number()) fail("expected a number");
    return value_.get<double>();
  }

  double non_negative() const {
    const double v = num();
    if (v < 0.0) fail("must be non-negative");
    return v;
  }

  std::size_t count() const {
    if (!value_.is_number_integer() || value_.get<long long>() < 0) {
      fail("expected a non-negative integer");
    }
    return value_.get<std::size_t>();
  }

  int integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<int>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) fail("expected a boolean");
    return value_.get<bool>();
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (const auto& n : items()) out.push_back(n.num());
    return out;
  }

 private:
  std::string child_path(const std::string& key) const { return path_ + "/" + escape_pointer(key); }

  const json& value_;
  std::string path_;
};

std::size_t index_of(const std::vector<std::string>& ids, const Node& n, const char* what) {
  const std::string id = n.str();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] == id) return i;
  }
  n.fail(fmt::format("unknown {} \"{}\"", what, id));
}

// ---- slot model -------------------------------------------------------------

SlotModelData read_slot_model(const Node& n) {
  SlotModelData d;
  d.universe.types = n.at("element_types").strings();
  d.universe.idle_index = index_of(d.universe.types, n.at("idle"), "element type");
  for (const auto& j : n.at("jobs").items()) {
    CompositeJob job;
    job.id = j.at("id").str();
    for (const auto& e : j.at("chain").items()) job.chain.push_back(index_of(d.universe.types, e, "element type"));
    d.jobs.push_back(std::move(job));
  }
  const Node grid = n.at("grid");
  d.grid.interval_len_slots = grid.at("interval_len").count();
  d.grid.intervals = grid.at("intervals").count();
  const Node sched = n.at("schedule");
  d.schedule.horizon_slots = sched.at("horizon").count();
  for (const auto& p : sched.at("processors").items()) {
    d.schedule.processors.push_back(p.at("id").str());
    auto& lane = d.schedule.placements.emplace_back();
    for (const auto& pl : p.at("placements").items()) {
      lane.push_back({pl.at("job").str(), pl.at("start").count()});
    }
  }
  if (auto e0 = n.opt("reference_profile")) {
    CountVector profile(e0->numbers());
    if (profile.size() != d.universe.size()) e0->fail("one entry per element type required");
    d.reference_profile = std::move(profile);
  }
  if (auto dm = n.opt("delta_max")) d.delta_max = dm->non_negative();
  return d;
}

json write_slot_model(const SlotModelData& d) {
  json j;
  j["element_types"] = d.universe.types;
  j["idle"] = d.universe.types.at(d.universe.idle_index);
  json jobs = json::array();
  for (const auto& job : d.jobs) {
    json chain = json::array();
    for (auto e : job.chain) chain.push_back(d.universe.types.at(e));
    jobs.push_back({{"id", job.id}, {"chain", chain}});
  }
  j["jobs"] = jobs;
  j["grid"] = {{"interval_len", d.grid.interval_len_slots}, {"intervals", d.grid.intervals}};
  json procs = json::array();
  for (std::size_t p = 0; p < d.schedule.processors.size(); ++p) {
    json lane = json::array();
    for (const auto& pl : d.schedule.placements.at(p)) lane.push_back({{"job", pl.job}, {"start", pl.start}});
    procs.push_back({{"id", d.schedule.processors[p]}, {"placements", lane}});
  }
  j["schedule"] = {{"horizon", d.schedule.horizon_slots}, {"processors", procs}};
  if (d.reference_profile) j["reference_profile"] = d.reference_profile->values();
  if (d.delta_max) j["delta_max"] = *d.delta_max;
  return j;
}

// ---- window jobs ------------------------------------------------------------

WindowData read_windows(const Node& n) {
  WindowData d;
  if (auto w = n.opt("weights")) {
    if (auto a = w->opt("earliness")) d.weights.earliness = a->non_negative();
    if (auto b = w->opt("tardiness")) d.weights.tardiness = b->non_negative();
  }
  for (const auto& j : n.at("jobs").items()) {
    WindowJob job;
    job.id = j.at("id").str();
    job.processing_time = j.at("processing_time").non_negative();
    const auto window = j.at("window").items();
    if (window.size() != 2) j.at("window").fail("expected [open, close]");
    job.window_open = window[0].num();
    job.window_close = window[1].num();
    if (auto m = j.opt("machine")) job.machine = m->count();
    if (auto p = j.opt("position")) job.position = p->count();
    d.jobs.push_back(std::move(job));
  }
  return d;
}

json write_windows(const WindowData& d) {
  json jobs = json::array();
  for (const auto& job : d.jobs) {
    jobs.push_back({{"id", job.id},
                    {"processing_time", job.processing_time},
                    {"window", {job.window_open, job.window_close}},
                    {"machine", job.machine},
                    {"position", job.position}});
  }
  return {{"weights", {{"earliness", d.weights.earliness}, {"tardiness", d.weights.tardiness}}},
          {"jobs", jobs}};
}

// ---- home-building ----------------------------------------------------------

CorrectionVariant read_variant(const Node& n) {
  CorrectionVariant v;
  const Node kind = n.at("kind");
  const auto k = parse_move_kind(kind.str());
  if (!k) kind.fail("expected none, shift_right, shift_left or exchange");
  v.kind = *k;
  if (v.kind == MoveKind::None) return v;
  v.building = n.at("building").str();
  if (v.kind == MoveKind::Exchange) {
    v.partner = n.at("partner").str();
  } else {
    const Node days = n.at("days");
    v.days = days.num();
    if (!(v.days > 0.0)) days.fail("must be positive");
  }
  v.profit = n.at("profit").num();
  v.cost = n.at("cost").non_negative();
  return v;
}

json write_variant(const CorrectionVariant& v) {
  json j{{"kind", to_string(v.kind)}};
  if (v.kind == MoveKind::None) return j;
  j["building"] = v.building;
  if (v.kind == MoveKind::Exchange) j["partner"] = v.partner;
  else j["days"] = v.days;
  j["profit"] = v.profit;
  j["cost"] = v.cost;
  return j;
}

std::vector<double> read_row(const Node& n, std::size_t width, const char* what) {
  auto row = n.numbers();
  if (row.size() != width) n.fail(fmt::format("expected {} {}", width, what));
  return row;
}

HomebuildingData read_homebuilding(const Node& n) {
  HomebuildingData d;
  HousingModel& m = d.model;
  if (auto fm = n.opt("first_month")) d.first_month = fm->str();
  m.months = n.at("months").count();
  if (auto rb = n.opt("rate_basis")) {
    const std::string basis = rb->str();
    if (basis == "units") m.rate_basis = RateBasis::Units;
    else if (basis == "units_minus_one") m.rate_basis = RateBasis::UnitsMinusOne;
    else rb->fail("expected units or units_minus_one");
  }
  m.floor_types = n.at("floor_types").strings();
  m.detail_types = n.at("detail_types").strings();

  for (const auto& s : n.at("sections").items()) {
    SectionType st;
    st.id = s.at("id").str();
    const auto rows = s.at("details").items();
    if (rows.size() != m.floor_types.size()) s.at("details").fail("one row per floor type required");
    for (const auto& r : rows) st.details.push_back(read_row(r, m.detail_types.size(), "detail counts"));
    m.sections.push_back(std::move(st));
  }
  std::vector<std::string> section_ids;
  for (const auto& s : m.sections) section_ids.push_back(s.id);

  for (const auto& t : n.at("building_types").items()) {
    BuildingType bt;
    bt.id = t.at("id").str();
    for (const auto& c : t.at("floor_counts").items()) bt.floor_counts.push_back(static_cast<int>(c.count()));
    if (bt.floor_counts.size() != m.floor_types.size()) t.at("floor_counts").fail("one count per floor type required");
    m.building_types.push_back(std::move(bt));
  }
  std::vector<std::string> type_ids;
  for (const auto& t : m.building_types) type_ids.push_back(t.id);

  for (const auto& b : n.at("buildings").items()) {
    Building bd;
    bd.id = b.at("id").str();
    if (auto l = b.opt("label")) bd.label = l->str();
    bd.type = index_of(type_ids, b.at("type"), "building type");
    bd.section_counts.assign(m.sections.size(), 0);
    for (const auto& [sid, cnt] : b.at("sections").members()) {
      std::size_t i = 0;
      while (i < section_ids.size() && section_ids[i] != sid) ++i;
      if (i == section_ids.size()) cnt.fail(fmt::format("unknown section \"{}\"", sid));
      bd.section_counts[i] = static_cast<int>(cnt.count());
    }
    bd.duration = b.at("duration").num();
    if (auto sq = b.opt("general_square")) bd.general_square = sq->num();
    m.buildings.push_back(std::move(bd));
  }

  for (const auto& t : n.at("teams").items()) {
    Team team;
    team.id = t.at("id").str();
    for (const auto& a : t.at("assignments").items()) {
      team.assignments.push_back({a.at("building").str(), a.at("start").num()});
    }
    d.schedule.teams.push_back(std::move(team));
  }

  const Node cap = n.at("capacity");
  const auto caps = cap.items();
  if (caps.size() != m.detail_types.size()) cap.fail("one capacity per detail type required");
  std::vector<double> capacity;
  for (const auto& c : caps) {
    capacity.push_back(c.is_null() ? std::numeric_limits<double>::infinity() : c.non_negative());
  }
  d.capacity = CountVector(std::move(capacity));

  if (auto ref = n.opt("reference_requirements")) {
    RequirementTable table;
    const auto rows = ref->items();
    if (rows.size() != m.months) ref->fail("one row per month required");
    for (const auto& r : rows) table.rows.emplace_back(read_row(r, m.detail_types.size(), "detail values"));
    d.reference = std::move(table);
  }

  if (auto corr = n.opt("corrections")) {
    ExplicitCorrections ec;
    ec.budget = corr->at("budget").non_negative();
    for (const auto& g : corr->at("groups").items()) {
      CorrectionGroup group;
      group.index = g.at("index").integer();
      group.targets = g.at("targets").strings();
      for (const auto& v : g.at("variants").items()) group.variants.push_back(read_variant(v));
      if (group.variants.empty() || group.variants.front().kind != MoveKind::None) {
        g.at("variants").fail("first variant must be none");
      }
      ec.groups.push_back(std::move(group));
    }
    d.corrections = std::move(ec);
  }
  return d;
}

json write_homebuilding(const HomebuildingData& d) {
  const HousingModel& m = d.model;
  json j;
  j["first_month"] = d.first_month;
  j["months"] = m.months;
  j["rate_basis"] = m.rate_basis == RateBasis::Units ? "units" : "units_minus_one";
  j["floor_types"] = m.floor_types;
  j["detail_types"] = m.detail_types;
  json sections = json::array();
  for (const auto& s : m.sections) sections.push_back({{"id", s.id}, {"details", s.details}});
  j["sections"] = sections;
  json types = json::array();
  for (const auto& t : m.building_types) types.push_back({{"id", t.id}, {"floor_counts", t.floor_counts}});
  j["building_types"] = types;
  json buildings = json::array();
  for (const auto& b : m.buildings) {
    json counts = json::object();
    for (std::size_t s = 0; s < b.section_counts.size(); ++s) {
      if (b.section_counts[s] != 0) counts[m.sections.at(s).id] = b.section_counts[s];
    }
    buildings.push_back({{"id", b.id},
                         {"label", b.label},
                         {"type", m.building_types.at(b.type).id},
                         {"sections", counts},
                         {"duration", b.duration},
                         {"general_square", b.general_square}});
  }
  j["buildings"] = buildings;
  json teams = json::array();
  for (const auto& t : d.schedule.teams) {
    json assignments = json::array();
    for (const auto& a : t.assignments) assignments.push_back({{"building", a.building}, {"start", a.start}});
    teams.push_back({{"id", t.id}, {"assignments", assignments}});
  }
  j["teams"] = teams;
  json cap = json::array();
  for (double c : d.capacity.values()) {
    if (std::isinf(c)) cap.push_back(nullptr);
    else cap.push_back(c);
  }
  j["capacity"] = cap;
  if (d.reference) {
    json rows = json::array();
    for (const auto& r : d.reference->rows) rows.push_back(r.values());
    j["reference_requirements"] = rows;
  }
  if (d.corrections) {
    json groups = json::array();
    for (const auto& g : d.corrections->groups) {
      json variants = json::array();
      for (const auto& v : g.variants) variants.push_back(write_variant(v));
      groups.push_back({{"index", g.index}, {"targets", g.targets}, {"variants", variants}});
    }
    j["corrections"] = {{"budget", d.corrections->budget}, {"groups", groups}};
  }
  return j;
}

// ---- improvement parameters -------------------------------------------------

LoopParams read_params(const Node& n) {
  LoopParams p;
  if (auto b = n.opt("budget")) p.budget = b->non_negative();
  if (auto it = n.opt("max_iterations")) p.max_iterations = it->count();
  if (auto s = n.opt("selector")) {
    const std::string sel = s->str();
    if (sel == "greedy") p.selector = Selector::Greedy;
    else if (sel == "exact") p.selector = Selector::Exact;
    else s->fail("expected greedy or exact");
  }
  if (auto cs = n.opt("cost_scale")) {
    p.cost_scale = cs->num();
    if (!(p.cost_scale > 0.0)) cs->fail("must be positive");
  }
  if (auto sd = n.opt("shift_days")) {
    p.config.shift_days = sd->numbers();
    for (double v : p.config.shift_days) {
      if (!(v > 0.0)) sd->fail("shift steps must be positive");
    }
  }
  if (auto ex = n.opt("exchanges")) p.config.exchanges = ex->boolean();
  if (auto c = n.opt("cost_per_day")) p.config.cost_per_day = c->non_negative();
  if (auto c = n.opt("exchange_cost")) p.config.exchange_cost = c->non_negative();
  if (auto w = n.opt("weights")) p.config.weights = w->numbers();
  if (auto e = n.opt("epsilon")) {
    p.config.epsilon = e->num();
    if (!(p.config.epsilon > 0.0)) e->fail("must be positive");
  }
  return p;
}

json write_params(const LoopParams& p) {
  return {{"budget", p.budget},
          {"max_iterations", p.max_iterations},
          {"selector", p.selector == Selector::Exact ? "exact" : "greedy"},
          {"cost_scale", p.cost_scale},
          {"shift_days", p.config.shift_days},
          {"exchanges", p.config.exchanges},
          {"cost_per_day", p.config.cost_per_day},
          {"exchange_cost", p.config.exchange_cost},
          {"weights", p.config.weights},
          {"epsilon", p.config.epsilon}};
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t offset = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto pos = what.rfind(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(what, line, column);
  }

  const Node root(doc, "");
  InstanceFile f;
  const Node version = root.at("format_version");
  f.format_version = version.integer();
  if (f.format_version != kFormatVersion) version.fail(fmt::format("unsupported version, expected {}", kFormatVersion));
  if (auto name = root.opt("name")) f.name = name->str();

  const Node mode = root.at("mode");
  const std::string m = mode.str();
  if (m == "abstract") f.mode = Mode::Abstract;
  else if (m == "homebuilding") f.mode = Mode::Homebuilding;
  else mode.fail("expected abstract or homebuilding");

  if (f.mode == Mode::Abstract) {
    if (root.has("homebuilding")) root.at("homebuilding").fail("not allowed in abstract mode");
    if (auto s = root.opt("slot_model")) f.slot_model = read_slot_model(*s);
    if (auto w = root.opt("windows")) f.windows = read_windows(*w);
    if (!f.slot_model && !f.windows) root.fail("abstract mode needs slot_model or windows");
  } else {
    if (root.has("slot_model")) root.at("slot_model").fail("not allowed in homebuilding mode");
    if (root.has("windows")) root.at("windows").fail("not allowed in homebuilding mode");
    f.homebuilding = read_homebuilding(root.at("homebuilding"));
  }
  if (auto p = root.opt("improve")) f.improve = read_params(*p);
  return f;
}

std::string serialize_instance(const InstanceFile& f) {
  json j;
  j["format_version"] = f.format_version;
  j["name"] = f.name;
  j["mode"] = to_string(f.mode);
  if (f.slot_model) j["slot_model"] = write_slot_model(*f.slot_model);
  if (f.windows) j["windows"] = write_windows(*f.windows);
  if (f.homebuilding) j["homebuilding"] = write_homebuilding(*f.homebuilding);
  j["improve"] = write_params(f.improve);
  return j.dump(2) + "\n";
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return parse_instance(buf.str());
}

void save_instance(const InstanceFile& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize_instance(instance);
  if (!out) throw IoError("cannot write " + path.string());
}

Instance slot_instance(const SlotModelData& data) {
  return validate_instance(data.universe, data.jobs, data.schedule.processors, data.grid);
}

void validate_file(const InstanceFile& f) {
  if (f.slot_model) {
    const Instance inst = slot_instance(*f.slot_model);
    validate_schedule(inst, f.slot_model->schedule);
  }
  if (f.windows) {
    validate_window_jobs(f.windows->jobs);
    validate_weights(f.windows->weights);
  }
  if (f.homebuilding) {
    const auto& hb = *f.homebuilding;
    validate_model(hb.model);
    validate_team_schedule(hb.model, hb.schedule);
    std::vector<Violation> found;
    if (!schedule_feasible(hb.model, hb.schedule)) {
      found.push_back({"team schedule", "building outside the planning horizon"});
    }
    if (hb.corrections) {
      try {
        validate_problem(to_problem(hb.corrections->groups, hb.corrections->budget));
      } catch (const ValidationError& e) {
        found.insert(found.end(), e.violations().begin(), e.violations().end());
      }
      for (const auto& g : hb.corrections->groups) {
        for (const auto& v : g.variants) {
          for (const auto& id : v.touched()) {
            if (!hb.model.find_building(id)) {
              found.push_back({fmt::format("correction group {}", g.index), "unknown building " + id});
            }
          }
        }
      }
    }
    if (!found.empty()) throw ValidationError(std::move(found));
  }
}

}  // namespace modbal
