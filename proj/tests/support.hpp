#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "modbal/balance.hpp"
#include "modbal/fixtures.hpp"
#include "modbal/homebuilding.hpp"
#include "modbal/mckp.hpp"

namespace support {

inline modbal::HomebuildingData kope() { return *modbal::fixture("kope-1982").homebuilding; }
inline modbal::SlotModelData modular() { return *modbal::fixture("modular-3proc").slot_model; }

inline std::size_t detail(const modbal::HousingModel& m, const char* id) { return *m.detail_index(id); }

inline std::size_t section(const modbal::HousingModel& m, const char* id) {
  for (std::size_t s = 0; s < m.sections.size(); ++s) {
    if (m.sections[s].id == id) return s;
  }
  throw std::invalid_argument(id);
}

// Every vector of `types` non-negative integers summing to `total`.
inline std::vector<std::vector<int>> compositions(int types, int total) {
  if (types == 1) return {{total}};
  std::vector<std::vector<int>> out;
  for (int first = 0; first <= total; ++first) {
    for (auto rest : compositions(types - 1, total - first)) {
      rest.insert(rest.begin(), first);
      out.push_back(rest);
    }
  }
  return out;
}

// Unit-move distance by breadth-first search: one move carries a single
// item to a neighbouring type.
inline std::map<std::vector<int>, int> unit_move_distances(const std::vector<int>& from) {
  std::map<std::vector<int>, int> dist{{from, 0}};
  std::queue<std::vector<int>> todo;
  todo.push(from);
  while (!todo.empty()) {
    const auto v = todo.front();
    todo.pop();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      for (int step : {-1, 1}) {
        const long j = static_cast<long>(i) + step;
        if (j < 0 || j >= static_cast<long>(v.size())) continue;
        auto w = v;
        --w[i];
        ++w[static_cast<std::size_t>(j)];
        if (dist.emplace(w, dist[v] + 1).second) todo.push(w);
      }
    }
  }
  return dist;
}

inline modbal::CountVector to_counts(const std::vector<int>& v) {
  return modbal::CountVector(std::vector<double>(v.begin(), v.end()));
}

// Random non-negative integer vector with a fixed total.
inline modbal::CountVector random_counts(std::mt19937& rng, std::size_t types, int total) {
  std::vector<double> v(types, 0.0);
  std::uniform_int_distribution<std::size_t> pick(0, types - 1);
  for (int i = 0; i < total; ++i) v[pick(rng)] += 1.0;
  return modbal::CountVector(std::move(v));
}

// Best selection by trying every combination.
inline modbal::Selection brute_force(const modbal::MckpProblem& p) {
  auto groups = p.groups;
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  std::vector<std::size_t> pick(groups.size(), 0), best_pick = pick;
  double best = 0.0;
  while (true) {
    double profit = 0.0, cost = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      profit += groups[g].items[pick[g]].profit;
      cost += groups[g].items[pick[g]].cost;
    }
    if (cost <= p.budget + 1e-9 && profit > best + 1e-9) {
      best = profit;
      best_pick = pick;
    }
    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == groups[g].items.size()) pick[g++] = 0;
    if (g == groups.size()) break;
  }
  modbal::Selection s;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    s.choices.push_back({groups[g].index, best_pick[g]});
    s.profit += groups[g].items[best_pick[g]].profit;
    s.cost += groups[g].items[best_pick[g]].cost;
  }
  return s;
}

// Costs on a 0.1 grid so that scaling by 10 is exact.
inline modbal::MckpProblem random_problem(std::mt19937& rng, std::size_t max_groups, std::size_t max_variants) {
  std::uniform_int_distribution<std::size_t> ng(1, max_groups), nv(1, max_variants);
  std::uniform_int_distribution<int> tenth(0, 40);
  std::uniform_real_distribution<double> profit(-1.0, 5.0);
  modbal::MckpProblem p;
  const std::size_t groups = ng(rng);
  for (std::size_t g = 0; g < groups; ++g) {
    modbal::MckpGroup grp{static_cast<int>(g + 1), {{}}};
    const std::size_t variants = nv(rng);
    for (std::size_t v = 1; v < variants; ++v) grp.items.push_back({std::round(profit(rng) * 100) / 100, tenth(rng) / 10.0});
    p.groups.push_back(std::move(grp));
  }
  p.budget = tenth(rng) / 5.0;
  return p;
}

}  // namespace support
