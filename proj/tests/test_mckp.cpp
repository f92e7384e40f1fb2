#include <algorithm>
#include <random>

#include "doctest.h"
#include "modbal/improve.hpp"
#include "modbal/instance_file.hpp"
#include "modbal/mckp.hpp"
#include "support.hpp"

using namespace modbal;

namespace {

MckpProblem correction_table(double budget) {
  const auto f = fixture("kope-1982-corrections");
  return to_problem(f.homebuilding->corrections->groups, budget);
}

void check_valid(const MckpProblem& p, const Selection& s) {
  REQUIRE(s.choices.size() == p.groups.size());
  CHECK(s.cost <= p.budget + 1e-9);
  for (std::size_t i = 1; i < s.choices.size(); ++i) CHECK(s.choices[i - 1].group < s.choices[i].group);
  for (const auto& c : s.choices) {
    const auto& g = *std::find_if(p.groups.begin(), p.groups.end(), [&](const auto& x) { return x.index == c.group; });
    CHECK(c.variant < g.items.size());
  }
}

}  // namespace

TEST_SUITE("mckp") {
  TEST_CASE("correction table at budget 3") {
    const auto p = correction_table(3.0);
    for (const auto& s : {mckp_greedy(p), mckp_exact(p)}) {
      CHECK(s.active() == std::vector<Choice>{{2, 3}, {3, 3}});
      CHECK(s.profit == doctest::Approx(5.0));
      CHECK(s.cost == doctest::Approx(3.0));
      check_valid(p, s);
    }
    CHECK(support::brute_force(p).profit == doctest::Approx(5.0));
    CHECK(p.groups.size() == 4);
    std::size_t combos = 1;
    for (const auto& g : p.groups) combos *= g.items.size();
    CHECK(combos == 5 * 4 * 4 * 2);
  }

  TEST_CASE("zero budget keeps everything at none") {
    const auto p = correction_table(0.0);
    for (const auto& s : {mckp_greedy(p), mckp_exact(p)}) {
      CHECK(s.active().empty());
      CHECK(s.profit == 0.0);
      CHECK(s.cost == 0.0);
    }
  }

  TEST_CASE("dominant item in a single group") {
    const MckpProblem p{{{1, {{}, {1, 1}, {3, 1}}}}, 1.0};
    CHECK(mckp_greedy(p).variant_of(1) == 2);
    CHECK(mckp_exact(p).variant_of(1) == 2);
  }

  TEST_CASE("free items come first") {
    const MckpProblem p{{{1, {{}, {10, 1}}}, {2, {{}, {0.5, 0}}}}, 0.5};
    const auto s = mckp_greedy(p);
    CHECK(s.variant_of(2) == 1);
    CHECK(s.variant_of(1) == 0);
  }

  TEST_CASE("unlimited budget picks the best variant of every group") {
    auto p = correction_table(100.0);
    const auto s = mckp_exact(p);
    for (const auto& g : p.groups) {
      std::size_t best = 0;
      for (std::size_t v = 1; v < g.items.size(); ++v) {
        if (g.items[v].profit > g.items[best].profit) best = v;
      }
      CHECK(s.variant_of(g.index) == best);
    }
  }

  TEST_CASE("non-positive profits are never taken") {
    const MckpProblem p{{{1, {{}, {-1, 0}, {0, 0}}}}, 5.0};
    CHECK(mckp_greedy(p).active().empty());
    CHECK(mckp_exact(p).active().empty());
  }

  TEST_CASE("random instances against enumeration") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 600; ++trial) {
      const auto p = support::random_problem(rng, 6, 5);
      const auto greedy = mckp_greedy(p);
      const auto exact = mckp_exact(p);
      const auto brute = support::brute_force(p);
      check_valid(p, greedy);
      check_valid(p, exact);
      CHECK(greedy.profit <= exact.profit + 1e-9);
      CHECK(exact.profit == doctest::Approx(brute.profit).epsilon(1e-9));
    }
  }

  TEST_CASE("group order does not change the selection") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
      auto p = support::random_problem(rng, 6, 5);
      const auto g0 = mckp_greedy(p);
      const auto e0 = mckp_exact(p);
      std::shuffle(p.groups.begin(), p.groups.end(), rng);
      CHECK(mckp_greedy(p) == g0);
      CHECK(mckp_exact(p) == e0);
    }
  }

  TEST_CASE("exact ties go to the smallest variant vector") {
    const MckpProblem p{{{1, {{}, {1, 1}, {1, 1}}}, {2, {{}, {1, 1}}}}, 1.0};
    const auto s = mckp_exact(p);
    CHECK(s.active() == std::vector<Choice>{{2, 1}});
  }

  TEST_CASE("state cap") {
    const MckpProblem p{{{1, {{}, {1, 1}}}}, 1e6};
    CHECK_THROWS_WITH_AS(mckp_exact(p, 10.0, 1000), "instance too large for exact oracle", std::length_error);
    CHECK_NOTHROW(mckp_exact(p, 10.0, 20'000'000));
  }

  TEST_CASE("problem validation") {
    CHECK_THROWS_AS(mckp_greedy({{{1, {{1, 0}}}}, 1.0}), ValidationError);
    CHECK_THROWS_AS(mckp_greedy({{{1, {{}, {1, -1}}}}, 1.0}), ValidationError);
    CHECK_THROWS_AS(mckp_greedy({{{1, {{}}}, {1, {{}}}}, 1.0}), ValidationError);
    CHECK_THROWS_AS(mckp_exact({{{1, {{}}}}, -1.0}), ValidationError);
  }
}
