#include "modbal/core_model.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <fmt/core.h>

namespace modbal {

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string msg = "validation failed";
  for (const auto& v : violations) {
    msg += fmt::format("\n  {}: {}", v.entity, v.rule);
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

std::optional<ElementIndex> ElementUniverse::find(std::string_view id) const {
  auto it = std::find(types.begin(), types.end(), id);
  if (it == types.end()) return std::nullopt;
  return static_cast<ElementIndex>(it - types.begin());
}

const CompositeJob* Instance::find_job(std::string_view id) const {
  auto it = std::find_if(jobs_.begin(), jobs_.end(),
                         [&](const CompositeJob& j) { return j.id == id; });
  return it == jobs_.end() ? nullptr : &*it;
}

Instance validate_instance(ElementUniverse universe, std::vector<CompositeJob> jobs,
                           std::vector<std::string> processors, TimeGrid grid) {
  std::vector<Violation> found;

  if (universe.idle_index >= universe.size()) {
    found.push_back({"universe", "idle index out of range"});
  }
  if (universe.size() < 2) {
    found.push_back({"universe", "at least one non-idle element type required"});
  }
  std::set<std::string> seen;
  for (const auto& t : universe.types) {
    if (t.empty()) found.push_back({"universe", "empty element id"});
    if (!seen.insert(t).second) found.push_back({"element " + t, "duplicate id"});
  }

  seen.clear();
  for (const auto& job : jobs) {
    const std::string entity = "job " + job.id;
    if (job.id.empty()) found.push_back({"job", "empty id"});
    if (!seen.insert(job.id).second) found.push_back({entity, "duplicate id"});
    if (job.chain.empty()) found.push_back({entity, "empty chain"});
    for (ElementIndex e : job.chain) {
      if (e >= universe.size()) {
        found.push_back({entity, "unknown element type"});
      } else if (e == universe.idle_index) {
        found.push_back({entity, "idle element inside chain"});
      }
    }
  }

  seen.clear();
  if (processors.empty()) found.push_back({"processors", "at least one processor required"});
  for (const auto& p : processors) {
    if (!seen.insert(p).second) found.push_back({"processor " + p, "duplicate id"});
  }

  if (grid.interval_len_slots == 0) {
    found.push_back({"grid", "interval length must be positive"});
  }

  if (!found.empty()) throw ValidationError(std::move(found));

  Instance inst;
  inst.universe_ = std::move(universe);
  inst.jobs_ = std::move(jobs);
  inst.processors_ = std::move(processors);
  inst.grid_ = grid;
  return inst;
}

void validate_schedule(const Instance& instance, const SlotSchedule& schedule) {
  std::vector<Violation> found;

  if (schedule.processors != instance.processors()) {
    found.push_back({"schedule", "processor list differs from instance"});
  }
  if (schedule.placements.size() != schedule.processors.size()) {
    found.push_back({"schedule", "one placement list per processor required"});
  }

  std::set<std::string> placed;
  const std::size_t lanes = std::min(schedule.placements.size(), schedule.processors.size());
  for (std::size_t p = 0; p < lanes; ++p) {
    const std::string lane = "processor " + schedule.processors[p];
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& pl : schedule.placements[p]) {
      const CompositeJob* job = instance.find_job(pl.job);
      if (job == nullptr) {
        found.push_back({lane, "unknown job " + pl.job});
        continue;
      }
      if (!placed.insert(pl.job).second) {
        found.push_back({"job " + pl.job, "placed more than once"});
      }
      const std::size_t end = pl.start + job->duration();
      if (end > schedule.horizon_slots) {
        found.push_back({"job " + pl.job, "ends after horizon"});
      }
      spans.emplace_back(pl.start, end);
    }
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first < spans[i - 1].second) {
        found.push_back({lane, "overlapping placements"});
      }
    }
  }

  if (!found.empty()) throw ValidationError(std::move(found));
}

std::size_t makespan(const Instance& instance, const SlotSchedule& schedule) {
  const std::size_t len = instance.grid().interval_len_slots;
  std::size_t last_slot_end = 0;
  for (const auto& lane : schedule.placements) {
    for (const auto& pl : lane) {
      const CompositeJob* job = instance.find_job(pl.job);
      if (job != nullptr) last_slot_end = std::max(last_slot_end, pl.start + job->duration());
    }
  }
  return (last_slot_end + len - 1) / len;
}

std::vector<IntervalBag> interval_bags(const Instance& instance, const SlotSchedule& schedule,
                                       const TimeGrid& grid) {
  if (grid.interval_len_slots == 0) {
    throw std::invalid_argument("interval length must be positive");
  }
  if (grid.covered_slots() < schedule.horizon_slots) {
    throw std::invalid_argument(fmt::format("grid covers {} slots but the horizon is {}",
                                            grid.covered_slots(), schedule.horizon_slots));
  }

  const std::size_t lanes = schedule.placements.size();
  const ElementIndex idle = instance.universe().idle_index;

  // Slot-by-processor occupancy over the whole grid.
  std::vector<std::vector<ElementIndex>> slots(lanes,
                                               std::vector<ElementIndex>(grid.covered_slots(), idle));
  for (std::size_t p = 0; p < lanes; ++p) {
    for (const auto& pl : schedule.placements[p]) {
      const CompositeJob* job = instance.find_job(pl.job);
      if (job == nullptr) throw std::invalid_argument("unknown job " + pl.job);
      for (std::size_t k = 0; k < job->duration(); ++k) {
        const std::size_t slot = pl.start + k;
        if (slot >= slots[p].size()) throw std::invalid_argument("job " + pl.job + " exceeds grid");
        slots[p][slot] = job->chain[k];
      }
    }
  }

  std::vector<IntervalBag> bags;
  bags.reserve(grid.intervals);
  for (std::size_t i = 0; i < grid.intervals; ++i) {
    IntervalBag bag;
    bag.interval = i + 1;
    bag.elements.reserve(grid.interval_len_slots * lanes);
    for (std::size_t p = 0; p < lanes; ++p) {
      for (std::size_t s = 0; s < grid.interval_len_slots; ++s) {
        bag.elements.push_back(slots[p][i * grid.interval_len_slots + s]);
      }
    }
    std::sort(bag.elements.begin(), bag.elements.end());
    bags.push_back(std::move(bag));
  }
  return bags;
}

}  // namespace modbal
