#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "modbal/fixtures.hpp"
#include "modbal/jit_metrics.hpp"

using namespace modbal;

namespace {

std::vector<WindowJob> jobs_of(const char* name) { return fixture(name).windows->jobs; }

// Completion of each job by the earliest-start recursion, written against a
// map keyed by (machine, position).
std::vector<double> recursion_oracle(const std::vector<WindowJob>& jobs) {
  std::vector<double> out(jobs.size());
  std::map<std::size_t, std::map<std::size_t, std::size_t>> seq;
  for (std::size_t i = 0; i < jobs.size(); ++i) seq[jobs[i].machine][jobs[i].position] = i;
  for (const auto& [machine, order] : seq) {
    double previous = 0.0;
    for (const auto& [pos, i] : order) {
      previous = std::max(previous, jobs[i].window_open) + jobs[i].processing_time;
      out[i] = previous;
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("jit_metrics") {
  TEST_CASE("one machine sequence is on time") {
    const auto jobs = jobs_of("windows-1machine");
    const auto r = schedule_windows(jobs);
    const std::vector<double> expect{0.5, 1.2, 1.8, 2.7, 3.4, 4.3, 5.0};
    REQUIRE(r.timings.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(r.timings[i].completion == doctest::Approx(expect[i]).epsilon(1e-12));
    CHECK(r.feasible);
    CHECK(r.late_jobs.empty());
    CHECK(penalty_sum(jobs, r.completions(), {}) == doctest::Approx(0.0));
  }

  TEST_CASE("three machine sequences are on time") {
    const auto jobs = jobs_of("windows-3machine");
    const auto r = schedule_windows(jobs);
    const std::vector<double> expect{1.2, 2.5, 3.7, 4.8, 0.7, 2.3, 3.2, 4.9, 1.2, 2.5, 3.8, 5.0};
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(r.timings[i].completion - expect[i]) <= 1e-9);
    CHECK(r.feasible);
  }

  TEST_CASE("longer a4 makes the one machine sequence late") {
    auto jobs = jobs_of("windows-1machine");
    jobs[3].processing_time = 1.2;
    const auto r = schedule_windows(jobs);
    CHECK_FALSE(r.feasible);
    REQUIRE_FALSE(r.late_jobs.empty());
    CHECK(r.late_jobs.front() == "a4");
    CHECK(r.timings[3].completion == doctest::Approx(3.0));
    CHECK(tardiness(jobs[3], 3.0) == doctest::Approx(0.2));
  }

  TEST_CASE("earliness and tardiness") {
    const WindowJob j{"j", 1.0, 2.0, 3.0};
    CHECK(earliness(j, 1.5) == doctest::Approx(0.5));
    CHECK(earliness(j, 2.5) == 0.0);
    CHECK(tardiness(j, 3.25) == doctest::Approx(0.25));
    CHECK(tardiness(j, 3.0) == 0.0);
  }

  TEST_CASE("penalty sum and max by hand") {
    const std::vector<WindowJob> jobs{{"a", 1, 2, 3}, {"b", 1, 0, 1}};
    const std::vector<double> c{1.0, 4.0};
    const PenaltyWeights w{2.0, 3.0};
    // a early by 1 (2*1), b late by 3 (3*3)
    CHECK(penalty_sum(jobs, c, w) == doctest::Approx(11.0));
    CHECK(penalty_max(jobs, c, w) == doctest::Approx(9.0));
    CHECK_THROWS_AS(penalty_sum(jobs, std::vector<double>{1.0}, w), std::invalid_argument);
  }

  TEST_CASE("start waits for the window and the previous job") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<WindowJob> jobs;
      const int machines = 1 + trial % 3;
      for (int m = 1; m <= machines; ++m) {
        for (int p = 1; p <= 5; ++p) {
          const double open = u(rng);
          jobs.push_back({"m" + std::to_string(m) + "p" + std::to_string(p), u(rng) / 2, open, open + 0.1 + u(rng),
                          static_cast<std::size_t>(m), static_cast<std::size_t>(p)});
        }
      }
      std::shuffle(jobs.begin(), jobs.end(), rng);
      const auto r = schedule_windows(jobs);
      const auto oracle = recursion_oracle(jobs);
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        CHECK(r.timings[i].completion == doctest::Approx(oracle[i]).epsilon(1e-12));
        CHECK(r.timings[i].on_time == (oracle[i] <= jobs[i].window_close + 1e-9));
      }
      const auto c = r.completions();
      CHECK(penalty_max(jobs, c, {}) <= penalty_sum(jobs, c, {}) + 1e-12);
      CHECK(r.feasible == (penalty_sum(jobs, c, {0.0, 1.0}) <= 1e-9 * jobs.size()));
    }
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(validate_window_jobs(std::vector<WindowJob>{{"a", -1, 0, 1}}), ValidationError);
    CHECK_THROWS_AS(validate_window_jobs(std::vector<WindowJob>{{"a", 1, 2, 2}}), ValidationError);
    CHECK_THROWS_AS(validate_window_jobs(std::vector<WindowJob>{{"a", 1, 0, 2, 1, 1}, {"b", 1, 0, 2, 1, 3}}),
                    ValidationError);
    CHECK_NOTHROW(validate_window_jobs(jobs_of("windows-3machine")));
    CHECK_THROWS_AS(validate_weights({-1.0, 1.0}), ValidationError);
  }
}
