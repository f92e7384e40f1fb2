#include "modbal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "modbal/balance.hpp"
#include "modbal/fixtures.hpp"
#include "modbal/improve.hpp"
#include "modbal/instance_file.hpp"
#include "modbal/jit_metrics.hpp"
#include "modbal/mckp.hpp"
#include "modbal/reports.hpp"

namespace modbal {

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIo = 2;

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  const std::string s = fmt::format("{:.2f}", v);
  return s == "-0.00" ? "0.00" : s;
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string vec(const CountVector& v) {
  std::vector<std::string> parts;
  for (double x : v.values()) parts.push_back(x == std::floor(x) ? fmt::format("{}", x) : num(x));
  return "(" + join(parts, ",") + ")";
}

const HomebuildingData& need_homebuilding(const InstanceFile& f) {
  if (!f.homebuilding) throw std::invalid_argument("command needs a homebuilding instance");
  return *f.homebuilding;
}

void print_requirement_table(std::ostream& out, const HousingModel& model, const RequirementTable& table) {
  out << fmt::format("{:>5}", "month");
  for (const auto& d : model.detail_types) out << fmt::format(" {:>9}", d);
  out << "\n";
  for (std::size_t m = 0; m < table.rows.size(); ++m) {
    out << fmt::format("{:>5}", m + 1);
    for (double v : table.rows[m].values()) out << fmt::format(" {:>9}", num(v));
    out << "\n";
  }
}

// ---- evaluate -----------------------------------------------------------------

void evaluate_slot(std::ostream& out, const SlotModelData& d) {
  const Instance inst = slot_instance(d);
  validate_schedule(inst, d.schedule);
  out << fmt::format("slot model: {} jobs on {} processors, {} intervals of {} slots\n", d.jobs.size(),
                     d.schedule.processors.size(), d.grid.intervals, d.grid.interval_len_slots);
  out << fmt::format("makespan: {} intervals\n", makespan(inst, d.schedule));
  for (const auto& bag : interval_bags(inst, d.schedule)) {
    std::vector<std::string> names;
    for (auto e : bag.elements) names.push_back(d.universe.types[e]);
    const CountVector counts = count_vector(bag, d.universe);
    std::string line = fmt::format("interval {}: {} counts {}", bag.interval, join(names), vec(counts));
    if (d.reference_profile) line += fmt::format(" delta {}", proximity(*d.reference_profile, counts));
    out << line << "\n";
  }
}

void evaluate_windows(std::ostream& out, const WindowData& w) {
  validate_window_jobs(w.jobs);
  validate_weights(w.weights);
  const auto result = schedule_windows(w.jobs);
  out << fmt::format("window jobs: {}\n", w.jobs.size());
  out << fmt::format("{:<6} {:>7} {:>8} {:>7} {:>10} {:>15} {}\n", "job", "machine", "position", "start",
                     "completion", "window", "status");
  for (std::size_t i = 0; i < w.jobs.size(); ++i) {
    const auto& j = w.jobs[i];
    const auto& t = result.timings[i];
    out << fmt::format("{:<6} {:>7} {:>8} {:>7} {:>10} {:>15} {}\n", j.id, j.machine, j.position, num(t.start),
                       num(t.completion), fmt::format("[{}, {}]", num(j.window_open), num(j.window_close)),
                       t.on_time ? "on time" : "late");
  }
  const auto completions = result.completions();
  out << fmt::format("penalty sum: {}\n", num(penalty_sum(w.jobs, completions, w.weights)));
  out << fmt::format("penalty max: {}\n", num(penalty_max(w.jobs, completions, w.weights)));
  out << fmt::format("feasible: {}\n", result.feasible ? "yes" : "no (late: " + join(result.late_jobs) + ")");
}

void evaluate_homebuilding(std::ostream& out, const HomebuildingData& hb) {
  validate_model(hb.model);
  validate_team_schedule(hb.model, hb.schedule);
  const auto table = horizon_requirement_table(hb.model, hb.schedule);
  out << fmt::format("homebuilding: {} buildings, {} teams, {} months from {}\n", hb.model.buildings.size(),
                     hb.schedule.teams.size(), hb.model.months, hb.first_month.empty() ? "-" : hb.first_month);
  out << "detail requirements per month:\n";
  print_requirement_table(out, hb.model, table);
  for (std::size_t d = 0; d < hb.model.detail_types.size(); ++d) {
    const int peak = peak_month(table, d);
    out << fmt::format("peak {}: month {} ({})\n", hb.model.detail_types[d], peak,
                       peak > 0 ? num(table.rows[peak - 1][d]) : num(0.0));
  }
  if (hb.reference) {
    const auto report = compare_requirements(table, *hb.reference);
    double worst = 0.0;
    for (const auto& c : report.cells) worst = std::max(worst, c.abs_dev);
    out << fmt::format("reference comparison: {} cells, largest absolute deviation {}\n", report.cells.size(),
                       num(worst));
  }
  out << "schedule:\n" << render_gantt(hb.model, hb.schedule);
}

int cmd_evaluate(const InstanceFile& f, std::ostream& out) {
  out << fmt::format("instance: {} ({})\n", f.name, to_string(f.mode));
  if (f.slot_model) evaluate_slot(out, *f.slot_model);
  if (f.windows) evaluate_windows(out, *f.windows);
  if (f.homebuilding) evaluate_homebuilding(out, *f.homebuilding);
  return kOk;
}

// ---- balance ------------------------------------------------------------------

int cmd_balance(const InstanceFile& f, std::ostream& out) {
  out << fmt::format("instance: {} ({})\n", f.name, to_string(f.mode));
  if (f.slot_model) {
    const auto& d = *f.slot_model;
    if (!d.reference_profile) throw std::invalid_argument("slot model has no reference_profile");
    const Instance inst = slot_instance(d);
    validate_schedule(inst, d.schedule);
    const double threshold = d.delta_max.value_or(0.0);
    const auto v = balance_verdict(inst, d.schedule, d.grid, *d.reference_profile, threshold);
    std::vector<std::string> deltas, bad;
    for (double x : v.deltas) deltas.push_back(fmt::format("{}", x));
    for (auto i : v.violating) bad.push_back(std::to_string(i));
    out << fmt::format("deltas: {}\n", join(deltas));
    out << fmt::format("max delta: {} (threshold {})\n", v.max_delta, v.threshold);
    out << fmt::format("balanced: {}\n", v.satisfied ? "yes" : "no");
    out << fmt::format("violating intervals: {}\n", bad.empty() ? "none" : join(bad));
  }
  if (f.homebuilding) {
    const auto& hb = *f.homebuilding;
    validate_model(hb.model);
    validate_team_schedule(hb.model, hb.schedule);
    const auto table = horizon_requirement_table(hb.model, hb.schedule);
    const auto months = violated_months(table, hb.capacity);
    std::vector<std::string> ms;
    for (int m : months) ms.push_back(std::to_string(m));
    out << fmt::format("violated months: {}\n", ms.empty() ? "none" : join(ms));
    for (int m : months) {
      const auto& row = table.rows[m - 1];
      for (std::size_t d = 0; d < row.size(); ++d) {
        if (row[d] > hb.capacity[d]) {
          out << fmt::format("  month {} {}: required {} capacity {} excess {}\n", m, hb.model.detail_types[d],
                             num(row[d]), num(hb.capacity[d]), num(row[d] - hb.capacity[d]));
        }
      }
    }
    out << fmt::format("violation measure: {:.6f}\n", violation_measure(table, hb.capacity, f.improve.config));
    out << fmt::format("balanced: {}\n", months.empty() ? "yes" : "no");
  }
  if (f.windows) {
    validate_window_jobs(f.windows->jobs);
    const auto r = schedule_windows(f.windows->jobs);
    out << fmt::format("window jobs on time: {}\n",
                       r.feasible ? "all" : fmt::format("no (late: {})", join(r.late_jobs)));
  }
  return kOk;
}

// ---- improve ------------------------------------------------------------------

struct ImproveOptions {
  std::optional<double> budget;
  std::optional<std::size_t> max_iters;
  std::optional<std::string> selector;
  std::string out_path;
};

std::string describe(const CorrectionVariant& v) {
  return fmt::format("{} (profit {}, cost {})", v.label(), num(v.profit), num(v.cost));
}

int cmd_improve(InstanceFile f, const ImproveOptions& opt, std::ostream& out) {
  auto& hb = *f.homebuilding;
  validate_file(f);
  LoopParams params = f.improve;
  if (opt.max_iters) params.max_iterations = *opt.max_iters;
  if (opt.selector) params.selector = *opt.selector == "exact" ? Selector::Exact : Selector::Greedy;
  const char* selector = params.selector == Selector::Exact ? "exact" : "greedy";

  out << fmt::format("instance: {} ({})\n", f.name, to_string(f.mode));
  TeamSchedule result;
  if (hb.corrections) {
    const double budget = opt.budget.value_or(hb.corrections->budget);
    const auto& groups = hb.corrections->groups;
    const Selection sel = mckp_solve(to_problem(groups, budget), params.selector, params.cost_scale);
    out << fmt::format("explicit corrections: {} groups, budget {}, selector {}\n", groups.size(), num(budget),
                       selector);
    for (const auto& c : sel.choices) {
      const auto& g = *std::find_if(groups.begin(), groups.end(), [&](const auto& x) { return x.index == c.group; });
      out << fmt::format("  group {}: variant {} {}\n", c.group, c.variant + 1, describe(g.variants[c.variant]));
    }
    out << fmt::format("selection profit {} cost {}\n", num(sel.profit), num(sel.cost));
    result = apply_selection(hb.model, hb.schedule, groups, sel);
    hb.corrections.reset();
  } else {
    if (opt.budget) params.budget = *opt.budget;
    out << fmt::format("improvement loop: budget {} per iteration, at most {} iterations, selector {}\n",
                       num(params.budget), params.max_iterations, selector);
    const auto run = improvement_loop(hb.model, hb.schedule, hb.capacity, params);
    for (const auto& r : run.trace) {
      std::vector<std::string> moves;
      for (const auto& v : r.applied) moves.push_back(describe(v));
      out << fmt::format("  iteration {}: V {:.6f} -> {:.6f}, max violation {}{}\n", r.iteration, r.v_before,
                         r.v_after, num(r.max_violation), r.fallback ? " (single best move)" : "");
      out << fmt::format("    applied: {}\n", moves.empty() ? "none" : join(moves, "; "));
    }
    out << fmt::format("stopped: {} after {} iterations\n", to_string(run.stop), run.trace.size());
    out << fmt::format("violation measure: {:.6f} -> {:.6f}\n", run.initial_v, run.final_v);
    result = run.schedule;
  }

  const auto before = horizon_requirement_table(hb.model, hb.schedule);
  const auto after = horizon_requirement_table(hb.model, result);
  for (std::size_t d = 0; d < hb.model.detail_types.size(); ++d) {
    if (std::isinf(hb.capacity[d])) continue;
    const int p0 = peak_month(before, d);
    const int p1 = peak_month(after, d);
    out << fmt::format("peak {}: {} (month {}) -> {} (month {}), capacity {}\n", hb.model.detail_types[d],
                       num(before.rows[p0 - 1][d]), p0, num(after.rows[p1 - 1][d]), p1, num(hb.capacity[d]));
  }
  out << "schedule:\n" << render_gantt(hb.model, result);
  hb.schedule = result;
  validate_team_schedule(hb.model, hb.schedule);
  if (!opt.out_path.empty()) {
    save_instance(f, opt.out_path);
    out << "written: " << opt.out_path << "\n";
  }
  return kOk;
}

// ---- report -------------------------------------------------------------------

struct ReportOptions {
  std::string detail;
  std::optional<double> capacity;
  std::string csv;
  std::string source = "model";
  std::string requirements;
  std::string comparison;
  bool gantt = false;
};

int cmd_report(const InstanceFile& f, const ReportOptions& opt, std::ostream& out) {
  const auto& hb = need_homebuilding(f);
  validate_model(hb.model);
  validate_team_schedule(hb.model, hb.schedule);
  const auto detail = hb.model.detail_index(opt.detail);
  if (!detail) throw std::invalid_argument("unknown detail id " + opt.detail);

  const auto computed = horizon_requirement_table(hb.model, hb.schedule);
  RequirementTable table = computed;
  if (opt.source == "reference") {
    if (!hb.reference) throw std::invalid_argument("instance has no reference requirements");
    table = *hb.reference;
  }
  const double capacity = opt.capacity.value_or(hb.capacity[*detail]);
  const std::string curve = balance_curve_csv(table, capacity, *detail);
  if (opt.csv.empty()) {
    out << curve;
  } else {
    write_text(opt.csv, curve);
    out << fmt::format("balance curve for {} ({} source, capacity {}): {}\n", opt.detail, opt.source,
                       num(capacity), opt.csv);
  }
  if (!opt.requirements.empty()) {
    export_requirements_csv(hb.model, table, opt.requirements);
    out << "requirements: " << opt.requirements << "\n";
  }
  if (!opt.comparison.empty()) {
    if (!hb.reference) throw std::invalid_argument("instance has no reference requirements");
    write_text(opt.comparison, comparison_csv(hb.model, compare_requirements(computed, *hb.reference)));
    out << "comparison: " << opt.comparison << "\n";
  }
  if (opt.gantt) out << render_gantt(hb.model, hb.schedule);
  return kOk;
}

// ---- fixtures -----------------------------------------------------------------

int cmd_fixtures_list(std::ostream& out) {
  for (const auto& info : fixture_catalog()) out << fmt::format("{:<22} {}\n", info.name, info.summary);
  return kOk;
}

int cmd_fixtures_emit(const std::string& name, const std::string& path, std::ostream& out) {
  if (name == "all") {
    if (path.empty()) throw std::invalid_argument("emitting all fixtures needs --out <directory>");
    std::filesystem::create_directories(path);
    for (const auto& info : fixture_catalog()) {
      const auto file = std::filesystem::path(path) / (info.name + ".json");
      save_instance(fixture(info.name), file);
      out << "written: " << file.string() << "\n";
    }
    return kOk;
  }
  const InstanceFile f = fixture(name);
  if (path.empty()) {
    out << serialize_instance(f);
  } else {
    save_instance(f, path);
    out << "written: " << path << "\n";
  }
  return kOk;
}

void print_violations(std::ostream& err, const ValidationError& e) {
  err << "validation failed:\n";
  for (const auto& v : e.violations()) err << "  " << v.entity << ": " << v.rule << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced modular scheduling and home-building plan repair", "modbal"};
  app.require_subcommand(1);

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check an instance file");
  validate->add_option("file", file, "Instance file")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Makespan, penalties and requirement tables");
  evaluate->add_option("file", file, "Instance file")->required();

  auto* balance = app.add_subcommand("balance", "Balance verdict and violated intervals or months");
  balance->add_option("file", file, "Instance file")->required();

  ImproveOptions iopt;
  auto* improve = app.add_subcommand("improve", "Repair a home-building schedule");
  improve->add_option("file", file, "Instance file")->required();
  improve->add_option("--budget", iopt.budget, "Cost budget per selection")->check(CLI::NonNegativeNumber);
  improve->add_option("--max-iters", iopt.max_iters, "Iteration limit");
  improve->add_option("--selector", iopt.selector, "Knapsack selector")
      ->check(CLI::IsMember({"greedy", "exact"}));
  improve->add_option("--out", iopt.out_path, "Write the repaired instance here");

  ReportOptions ropt;
  auto* report = app.add_subcommand("report", "Balance curve and requirement exports");
  report->add_option("file", file, "Instance file")->required();
  report->add_option("--detail", ropt.detail, "Detail type id")->required();
  report->add_option("--capacity", ropt.capacity, "Capacity for the detail (defaults to the instance)");
  report->add_option("--csv", ropt.csv, "Balance curve CSV path (stdout when omitted)");
  report->add_option("--source", ropt.source, "Requirement table to report")
      ->check(CLI::IsMember({"model", "reference"}));
  report->add_option("--requirements", ropt.requirements, "Also write the full requirement table");
  report->add_option("--comparison", ropt.comparison, "Also write the computed vs reference comparison");
  report->add_flag("--gantt", ropt.gantt, "Print the team schedule chart");

  auto* fixtures = app.add_subcommand("fixtures", "Bundled instances");
  fixtures->require_subcommand(1);
  auto* list = fixtures->add_subcommand("list", "List bundled instances");
  std::string fixture_name;
  std::string fixture_out;
  auto* emit = fixtures->add_subcommand("emit", "Print or write a bundled instance");
  emit->add_option("name", fixture_name, "Fixture name, or all")->required();
  emit->add_option("--out", fixture_out, "Output file (directory for all)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIo;
  }

  try {
    if (*list) return cmd_fixtures_list(out);
    if (*emit) return cmd_fixtures_emit(fixture_name, fixture_out, out);

    const InstanceFile f = load_instance(file);
    if (*validate) {
      validate_file(f);
      out << fmt::format("ok: {} ({})\n", f.name, to_string(f.mode));
      return kOk;
    }
    if (*evaluate) return cmd_evaluate(f, out);
    if (*balance) return cmd_balance(f, out);
    if (*improve) {
      need_homebuilding(f);
      return cmd_improve(f, iopt, out);
    }
    if (*report) return cmd_report(f, ropt, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ValidationError& e) {
    print_violations(err, e);
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kIo;
}

}  // namespace modbal
