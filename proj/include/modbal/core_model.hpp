#pragma once

// Slot-based model of composite modular jobs assembled on parallel
// processors. Time advances in unit slots; every chain element occupies one
// slot, and slots are grouped into equal-length intervals whose element
// content is the clustering solution checked for balance.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modbal {

using ElementIndex = std::size_t;

struct Violation {
  std::string entity;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

/// Thrown when validation finds one or more rule violations. The message
/// lists every violation as "<entity>: <rule>".
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ElementUniverse {
  std::vector<std::string> types;
  ElementIndex idle_index = 0;

  std::size_t size() const noexcept { return types.size(); }
  std::optional<ElementIndex> find(std::string_view id) const;

  bool operator==(const ElementUniverse&) const = default;
};

/// A job is a chain of element types; its duration is the chain length.
struct CompositeJob {
  std::string id;
  std::vector<ElementIndex> chain;

  std::size_t duration() const noexcept { return chain.size(); }

  bool operator==(const CompositeJob&) const = default;
};

struct TimeGrid {
  std::size_t interval_len_slots = 1;
  std::size_t intervals = 0;

  std::size_t covered_slots() const noexcept { return interval_len_slots * intervals; }

  bool operator==(const TimeGrid&) const = default;
};

struct Placement {
  std::string job;
  std::size_t start = 0;

  bool operator==(const Placement&) const = default;
};

/// placements[p] holds the jobs run by processors[p], in any order.
struct SlotSchedule {
  std::vector<std::string> processors;
  std::vector<std::vector<Placement>> placements;
  std::size_t horizon_slots = 0;

  bool operator==(const SlotSchedule&) const = default;
};

/// Elements consumed during one interval, idle-padded to
/// interval_len_slots * processors. `interval` is the 1-based ordinal.
struct IntervalBag {
  std::size_t interval = 0;
  std::vector<ElementIndex> elements;

  bool operator==(const IntervalBag&) const = default;
};

/// A validated problem statement. Construct through validate_instance.
class Instance {
 public:
  const ElementUniverse& universe() const noexcept { return universe_; }
  std::span<const CompositeJob> jobs() const noexcept { return jobs_; }
  const std::vector<std::string>& processors() const noexcept { return processors_; }
  const TimeGrid& grid() const noexcept { return grid_; }

  const CompositeJob* find_job(std::string_view id) const;

 private:
  friend Instance validate_instance(ElementUniverse, std::vector<CompositeJob>,
                                    std::vector<std::string>, TimeGrid);

  ElementUniverse universe_;
  std::vector<CompositeJob> jobs_;
  std::vector<std::string> processors_;
  TimeGrid grid_;
};

/// Checks universe, job and processor rules and returns the validated
/// instance. Throws ValidationError listing every violation found.
Instance validate_instance(ElementUniverse universe, std::vector<CompositeJob> jobs,
                           std::vector<std::string> processors, TimeGrid grid);

/// Throws ValidationError if the schedule breaks a SlotSchedule invariant
/// (unknown or repeated jobs, overlapping placements, horizon overrun,
/// processor list differing from the instance).
void validate_schedule(const Instance& instance, const SlotSchedule& schedule);

/// Number of intervals until the last processor finishes; 0 when nothing is
/// placed. Uses the instance grid.
std::size_t makespan(const Instance& instance, const SlotSchedule& schedule);

/// The clustering solution of a schedule: one idle-padded bag per interval.
/// Throws std::invalid_argument when the grid does not cover the horizon.
std::vector<IntervalBag> interval_bags(const Instance& instance, const SlotSchedule& schedule,
                                       const TimeGrid& grid);

inline std::vector<IntervalBag> interval_bags(const Instance& instance,
                                              const SlotSchedule& schedule) {
  return interval_bags(instance, schedule, instance.grid());
}

}  // namespace modbal
