#pragma once

// Just-in-time objectives for jobs with processing windows, and an
// evaluator for fixed per-machine sequences.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace modbal {

/// Jobs completing later than window_close by more than this are late.
inline constexpr double kWindowTolerance = 1e-9;

struct WindowJob {
  std::string id;
  double processing_time = 0.0;
  double window_open = 0.0;
  double window_close = 0.0;
  std::size_t machine = 1;
  std::size_t position = 1;  // 1-based place in the machine sequence

  bool operator==(const WindowJob&) const = default;
};

struct PenaltyWeights {
  double earliness = 1.0;
  double tardiness = 1.0;

  bool operator==(const PenaltyWeights&) const = default;
};

/// Throws ValidationError on negative processing times, empty windows,
/// negative weights or per-machine positions that are not 1..n.
void validate_window_jobs(std::span<const WindowJob> jobs);
void validate_weights(const PenaltyWeights& weights);

/// u = max(0, open - C)
double earliness(const WindowJob& job, double completion);
/// v = max(0, C - close)
double tardiness(const WindowJob& job, double completion);

/// Sum over jobs of alpha*u + beta*v. `completions` is parallel to `jobs`;
/// a size mismatch throws std::invalid_argument.
double penalty_sum(std::span<const WindowJob> jobs, std::span<const double> completions,
                   const PenaltyWeights& weights);

/// Max over jobs of max(alpha*u, beta*v).
double penalty_max(std::span<const WindowJob> jobs, std::span<const double> completions,
                   const PenaltyWeights& weights);

struct WindowTiming {
  std::string id;
  double start = 0.0;
  double completion = 0.0;
  bool on_time = true;
};

struct WindowScheduleResult {
  std::vector<WindowTiming> timings;  // same order as the input jobs
  std::vector<std::string> late_jobs;
  bool feasible = true;

  std::vector<double> completions() const;
};

/// Runs each machine's jobs in position order, starting every job at the
/// later of its predecessor's completion and its window opening. Jobs that
/// finish after their window closes make the result infeasible.
WindowScheduleResult schedule_windows(std::span<const WindowJob> jobs);

}  // namespace modbal
