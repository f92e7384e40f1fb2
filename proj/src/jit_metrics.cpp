#include "modbal/jit_metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "modbal/core_model.hpp"

namespace modbal {

void validate_window_jobs(std::span<const WindowJob> jobs) {
  std::vector<Violation> found;
  std::map<std::size_t, std::vector<std::size_t>> positions;
  for (const auto& job : jobs) {
    const std::string entity = "window job " + job.id;
    if (!(job.processing_time >= 0.0)) found.push_back({entity, "negative processing time"});
    if (!(job.window_open < job.window_close)) found.push_back({entity, "window must open before it closes"});
    positions[job.machine].push_back(job.position);
  }
  for (auto& [machine, pos] : positions) {
    std::sort(pos.begin(), pos.end());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (pos[i] != i + 1) {
        found.push_back({"machine " + std::to_string(machine), "positions must run 1..n without gaps"});
        break;
      }
    }
  }
  if (!found.empty()) throw ValidationError(std::move(found));
}

void validate_weights(const PenaltyWeights& weights) {
  std::vector<Violation> found;
  if (!(weights.earliness >= 0.0)) found.push_back({"weights", "negative earliness weight"});
  if (!(weights.tardiness >= 0.0)) found.push_back({"weights", "negative tardiness weight"});
  if (!found.empty()) throw ValidationError(std::move(found));
}

double earliness(const WindowJob& job, double completion) {
  return std::max(0.0, job.window_open - completion);
}

double tardiness(const WindowJob& job, double completion) {
  return std::max(0.0, completion - job.window_close);
}

namespace {

void require_parallel(std::span<const WindowJob> jobs, std::span<const double> completions) {
  if (jobs.size() != completions.size()) {
    throw std::invalid_argument("one completion time per job required");
  }
}

}  // namespace

double penalty_sum(std::span<const WindowJob> jobs, std::span<const double> completions,
                   const PenaltyWeights& weights) {
  require_parallel(jobs, completions);
  double total = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    total += weights.earliness * earliness(jobs[i], completions[i]) +
             weights.tardiness * tardiness(jobs[i], completions[i]);
  }
  return total;
}

double penalty_max(std::span<const WindowJob> jobs, std::span<const double> completions,
                   const PenaltyWeights& weights) {
  require_parallel(jobs, completions);
  double worst = 0.0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    worst = std::max({worst, weights.earliness * earliness(jobs[i], completions[i]),
                      weights.tardiness * tardiness(jobs[i], completions[i])});
  }
  return worst;
}

std::vector<double> WindowScheduleResult::completions() const {
  std::vector<double> out;
  out.reserve(timings.size());
  for (const auto& t : timings) out.push_back(t.completion);
  return out;
}

WindowScheduleResult schedule_windows(std::span<const WindowJob> jobs) {
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (jobs[a].machine != jobs[b].machine) return jobs[a].machine < jobs[b].machine;
    return jobs[a].position < jobs[b].position;
  });

  WindowScheduleResult result;
  result.timings.resize(jobs.size());

  std::size_t machine = 0;
  double clock = 0.0;
  bool first = true;
  for (std::size_t idx : order) {
    const WindowJob& job = jobs[idx];
    if (first || job.machine != machine) {
      machine = job.machine;
      clock = 0.0;
      first = false;
    }
    WindowTiming& t = result.timings[idx];
    t.id = job.id;
    t.start = std::max(clock, job.window_open);
    t.completion = t.start + job.processing_time;
    t.on_time = t.completion <= job.window_close + kWindowTolerance;
    clock = t.completion;
  }

  for (std::size_t idx : order) {
    if (!result.timings[idx].on_time) {
      result.feasible = false;
      result.late_jobs.push_back(jobs[idx].id);
    }
  }
  return result;
}

}  // namespace modbal
