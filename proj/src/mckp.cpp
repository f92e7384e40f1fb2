#include "modbal/mckp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/core.h>

#include "modbal/core_model.hpp"

namespace modbal {

std::size_t Selection::variant_of(int group) const {
  for (const auto& c : choices) {
    if (c.group == group) return c.variant;
  }
  throw std::out_of_range(fmt::format("no choice for group {}", group));
}

std::vector<Choice> Selection::active() const {
  std::vector<Choice> out;
  std::copy_if(choices.begin(), choices.end(), std::back_inserter(out),
               [](const Choice& c) { return c.variant != 0; });
  return out;
}

void validate_problem(const MckpProblem& problem) {
  std::vector<Violation> found;
  if (!(problem.budget >= 0.0)) found.push_back({"budget", "must be non-negative"});
  std::set<int> seen;
  for (const auto& g : problem.groups) {
    const std::string entity = fmt::format("group {}", g.index);
    if (!seen.insert(g.index).second) found.push_back({entity, "duplicate group index"});
    if (g.items.empty() || g.items.front() != MckpItem{}) {
      found.push_back({entity, "first variant must be none with zero profit and cost"});
    }
    for (const auto& item : g.items) {
      if (!(item.cost >= 0.0)) found.push_back({entity, "negative cost"});
      if (!std::isfinite(item.profit)) found.push_back({entity, "profit must be finite"});
    }
  }
  if (!found.empty()) throw ValidationError(std::move(found));
}

namespace {

std::vector<MckpGroup> canonical(const MckpProblem& problem) {
  validate_problem(problem);
  std::vector<MckpGroup> groups = problem.groups;
  std::sort(groups.begin(), groups.end(),
            [](const MckpGroup& a, const MckpGroup& b) { return a.index < b.index; });
  return groups;
}

Selection finish(const std::vector<MckpGroup>& groups, const std::vector<std::size_t>& picks) {
  Selection s;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    s.choices.push_back({groups[g].index, picks[g]});
    s.profit += groups[g].items[picks[g]].profit;
    s.cost += groups[g].items[picks[g]].cost;
  }
  return s;
}

double ratio(const MckpItem& item) {
  if (item.cost == 0.0) return std::numeric_limits<double>::infinity();
  return item.profit / item.cost;
}

}  // namespace

Selection mckp_greedy(const MckpProblem& problem) {
  const auto groups = canonical(problem);

  struct Ranked {
    std::size_t group;
    std::size_t variant;
    double ratio;
  };
  std::vector<Ranked> ranked;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t v = 1; v < groups[g].items.size(); ++v) {
      if (groups[g].items[v].profit > 0.0) ranked.push_back({g, v, ratio(groups[g].items[v])});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.group != b.group) return a.group < b.group;
    return a.variant < b.variant;
  });

  std::vector<std::size_t> picks(groups.size(), 0);
  double used = 0.0;
  for (const auto& r : ranked) {
    if (picks[r.group] != 0) continue;
    const double cost = groups[r.group].items[r.variant].cost;
    if (used + cost > problem.budget + kBudgetTolerance) continue;
    picks[r.group] = r.variant;
    used += cost;
  }
  return finish(groups, picks);
}

Selection mckp_exact(const MckpProblem& problem, double cost_scale, std::size_t state_cap) {
  if (!(cost_scale > 0.0)) throw std::invalid_argument("cost scale must be positive");
  const auto groups = canonical(problem);
  const double scaled_budget = std::floor(problem.budget * cost_scale + 1e-9);
  const std::size_t n = groups.size();
  if (scaled_budget + 1.0 > static_cast<double>(state_cap) ||
      static_cast<double>(n) * (scaled_budget + 1.0) > static_cast<double>(state_cap)) {
    throw std::length_error("instance too large for exact oracle");
  }
  const auto cap = static_cast<std::size_t>(scaled_budget);

  std::vector<std::vector<std::size_t>> weight(n);
  for (std::size_t g = 0; g < n; ++g) {
    for (const auto& item : groups[g].items) {
      const double w = std::ceil(item.cost * cost_scale - 1e-9);
      weight[g].push_back(w > scaled_budget ? cap + 1 : static_cast<std::size_t>(std::max(w, 0.0)));
    }
  }

  // best[g][w]: largest profit from groups g.. with w scaled budget left.
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (std::size_t g = n; g-- > 0;) {
    for (std::size_t w = 0; w <= cap; ++w) {
      double b = best[g + 1][w];  // none
      for (std::size_t v = 1; v < groups[g].items.size(); ++v) {
        if (weight[g][v] > w) continue;
        b = std::max(b, groups[g].items[v].profit + best[g + 1][w - weight[g][v]]);
      }
      best[g][w] = b;
    }
  }

  std::vector<std::size_t> picks(n, 0);
  std::size_t left = cap;
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t v = 0; v < groups[g].items.size(); ++v) {
      if (weight[g][v] > left) continue;
      const double value = groups[g].items[v].profit + best[g + 1][left - weight[g][v]];
      if (value >= best[g][left] - 1e-9) {
        picks[g] = v;
        left -= weight[g][v];
        break;
      }
    }
  }
  return finish(groups, picks);
}

Selection mckp_solve(const MckpProblem& problem, Selector selector, double cost_scale) {
  return selector == Selector::Exact ? mckp_exact(problem, cost_scale) : mckp_greedy(problem);
}

}  // namespace modbal
