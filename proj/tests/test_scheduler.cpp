#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "support/testsupport.hpp"
#include "valuesched/scheduler.hpp"

using namespace valuesched;
namespace ts = valuesched::testsupport;

namespace {

const Placement& placement_of(const Schedule& s, const std::string& job_id) {
  for (const Placement& p : s.placements) {
    if (p.job_id == job_id) return p;
  }
  REQUIRE_MESSAGE(false, ("no placement for " + job_id).c_str());
  static Placement dummy;
  return dummy;
}

DecodedGenome genome(std::vector<std::int32_t> alloc, std::vector<double> prio,
                     std::vector<std::uint8_t> incl) {
  return {std::move(alloc), std::move(prio), std::move(incl)};
}

}  // namespace

TEST_CASE("single job occupies [0, duration]") {
  const Scenario s = ts::minimal_scenario(100, 10, 1000, 2000);
  const Schedule sched = build_schedule(s, genome({0}, {0.5}, {1}));
  REQUIRE(sched.placements.size() == 1);
  CHECK(sched.placements[0].start_s == 0);
  CHECK(sched.placements[0].end_s == 100);
  CHECK(sched.makespan_s == 100);
}

TEST_CASE("higher priority dispatches first on a shared machine") {
  Scenario s;
  s.machines = {ts::machine("M1")};
  s.orders = {ts::order("O1", 0, {1000, 2000, 0},
                        {ts::job("J1", {ts::option("M1", "Mode 1", 100, 10)}),
                         ts::job("J2", {ts::option("M1", "Mode 1", 50, 10)})})};
  const Schedule sched = build_schedule(s, genome({0, 0}, {0.2, 0.9}, {1}));
  CHECK(placement_of(sched, "J2").start_s == 0);
  CHECK(placement_of(sched, "J2").end_s == 50);
  CHECK(placement_of(sched, "J1").start_s == 50);
  CHECK(placement_of(sched, "J1").end_s == 150);
  CHECK(sched.makespan_s == 150);
}

TEST_CASE("precedence chains across machines") {
  Scenario s;
  s.machines = {ts::machine("M1"), ts::machine("M2")};
  s.orders = {ts::order("O1", 0, {1000, 2000, 0},
                        {ts::job("J1", {ts::option("M1", "Mode 1", 100, 10)}),
                         ts::job("J2", {ts::option("M2", "Mode 1", 100, 10)})},
                        {{"J1", "J2"}})};
  // J2 gets the higher priority but must still wait for J1.
  const Schedule sched = build_schedule(s, genome({0, 0}, {0.1, 0.9}, {1}));
  CHECK(placement_of(sched, "J1").start_s == 0);
  CHECK(placement_of(sched, "J2").start_s == 100);
  CHECK(placement_of(sched, "J2").end_s == 200);
  CHECK(sched.makespan_s == 200);
}

TEST_CASE("gap rule separates matching consecutive jobs") {
  Scenario s;
  s.machines = {ts::machine("M1")};
  Job a = ts::job("JA", {ts::option("M1", "Mode 1", 100, 10)});
  a.gap_class = "classA";
  Job b = ts::job("JB", {ts::option("M1", "Mode 1", 100, 10)});
  b.gap_class = "classB";
  s.orders = {ts::order("O1", 0, {1000, 2000, 0}, {std::move(a), std::move(b)})};
  s.gap_rules = {{"M1", "classA", "classB", 30}};
  const Schedule sched = build_schedule(s, genome({0, 0}, {0.9, 0.1}, {1}));
  CHECK(placement_of(sched, "JA").end_s == 100);
  CHECK(placement_of(sched, "JB").start_s == 130);

  // The reverse pairing has no rule, so the jobs run back to back.
  const Schedule reversed = build_schedule(s, genome({0, 0}, {0.1, 0.9}, {1}));
  CHECK(placement_of(reversed, "JB").end_s == 100);
  CHECK(placement_of(reversed, "JA").start_s == 100);
}

TEST_CASE("mutex group serializes its machines") {
  Scenario s;
  s.machines = {ts::machine("M1"), ts::machine("M2")};
  s.mutex_groups = {{{"M1", "M2"}}};
  s.orders = {ts::order("O1", 0, {1000, 2000, 0},
                        {ts::job("J1", {ts::option("M1", "Mode 1", 100, 10)}),
                         ts::job("J2", {ts::option("M2", "Mode 1", 80, 10)})})};
  const Schedule sched = build_schedule(s, genome({0, 0}, {0.9, 0.1}, {1}));
  CHECK(placement_of(sched, "J1").start_s == 0);
  CHECK(placement_of(sched, "J2").start_s == 100);
  CHECK(placement_of(sched, "J2").end_s == 180);
}

TEST_CASE("equal priorities break toward the lower global index") {
  Scenario s;
  s.machines = {ts::machine("M1")};
  s.orders = {ts::order("O1", 0, {1000, 2000, 0},
                        {ts::job("J1", {ts::option("M1", "Mode 1", 10, 1)}),
                         ts::job("J2", {ts::option("M1", "Mode 1", 10, 1)})})};
  const Schedule sched = build_schedule(s, genome({0, 0}, {0.5, 0.5}, {1}));
  CHECK(placement_of(sched, "J1").start_s == 0);
  CHECK(placement_of(sched, "J2").start_s == 10);
}

TEST_CASE("global job order sorts orders and jobs by id") {
  Scenario s;
  s.machines = {ts::machine("M1")};
  // Declared out of id order on purpose.
  s.orders = {ts::order("O2", 0, {1000, 2000, 0}, {ts::job("X", {ts::option("M1", "Mode 1", 10, 1)})}),
              ts::order("O1", 0, {1000, 2000, 0}, {ts::job("B", {ts::option("M1", "Mode 1", 10, 1)}),
                                                   ts::job("A", {ts::option("M1", "Mode 1", 10, 1)})})};
  const ScenarioIndex index(s);
  CHECK(index.job_index("A") == 0);
  CHECK(index.job_index("B") == 1);
  CHECK(index.job_index("X") == 2);
  CHECK(index.order_index("O1") == 0);
  CHECK(index.order_index("O2") == 1);
}

TEST_CASE("release times hold the start") {
  Scenario s = ts::minimal_scenario(100, 10, 1000, 2000);
  s.orders[0].arrival_time_s = 40;
  const Schedule sched = build_schedule(s, genome({0}, {0.5}, {1}));
  CHECK(placement_of(sched, "J1").start_s == 40);
}

TEST_CASE("evaluate reproduces the catalogue element on the plateau") {
  Scenario s;
  s.machines = {ts::machine("M3")};
  s.orders = {ts::order("E1", 0, {30000, 40000, 0},
                        {ts::job("E1J1", {ts::option("M3", "Mode 1", 1256.2, 481.6)})})};
  const auto [sched, obj] = evaluate(s, genome({0}, {0.5}, {1}));
  CHECK(obj.makespan_s == 1256.2);
  CHECK(obj.total_profit == 481.6);
  CHECK(sched.elements_produced == 1);
  CHECK(sched.order_completion.at("E1") == 1256.2);
}

TEST_CASE("excluding the only order yields the empty schedule") {
  const Scenario s = ts::minimal_scenario();
  const auto [sched, obj] = evaluate(s, genome({0}, {0.5}, {0}));
  CHECK(sched.placements.empty());
  CHECK(obj.makespan_s == 0);
  CHECK(obj.total_profit == 0);
  CHECK(sched.elements_produced == 0);
  CHECK(sched.order_completion.empty());
}

TEST_CASE("two orders on one machine: late completion pays half") {
  Scenario s;
  s.machines = {ts::machine("M1")};
  s.orders = {ts::order("O1", 0, {150, 250, 0}, {ts::job("O1J1", {ts::option("M1", "Mode 1", 100, 100)})}),
              ts::order("O2", 0, {150, 250, 0}, {ts::job("O2J1", {ts::option("M1", "Mode 1", 100, 100)})})};
  for (const auto prios : {std::pair{0.9, 0.1}, std::pair{0.1, 0.9}}) {
    const auto [sched, obj] = evaluate(s, genome({0, 0}, {prios.first, prios.second}, {1, 1}));
    CHECK(obj.makespan_s == 200);
    CHECK(obj.total_profit == 150);
    CHECK(sched.elements_produced == 2);
  }
}

TEST_CASE("dominance is strict on one side") {
  CHECK(dominates({100, 10}, {200, 10}));
  CHECK(dominates({100, 10}, {100, 5}));
  CHECK(dominates({100, 10}, {200, 5}));
  CHECK_FALSE(dominates({100, 10}, {100, 10}));
  CHECK_FALSE(dominates({100, 10}, {50, 5}));
  CHECK_FALSE(dominates({50, 5}, {100, 10}));
}

TEST_CASE("evaluate is deterministic") {
  Rng rng(99);
  for (int i = 0; i < 10; ++i) {
    const Scenario s = ts::random_scenario(rng);
    const ScenarioIndex index(s);
    const DecodedGenome g = ts::random_genome(index, true, rng);
    Evaluator ev(index);
    const EvalResult a = ev.run(g);
    const EvalResult b = ev.run(g);
    CHECK(a.objectives == b.objectives);
    CHECK(a.elements_produced == b.elements_produced);
  }
}

TEST_CASE("random schedules satisfy every feasibility invariant") {
  Rng rng(2024);
  for (int i = 0; i < 250; ++i) {
    const Scenario s = ts::random_scenario(rng);
    REQUIRE(validate_scenario(s).ok());
    const ScenarioIndex index(s);
    const DecodedGenome g = ts::random_genome(index, rng.next_bool(0.5), rng);
    const Schedule sched = build_schedule(index, g);
    const auto violations = ts::schedule_violations(s, ts::included_ids(index, g), sched);
    if (!violations.empty()) {
      for (const auto& v : violations) MESSAGE(v);
    }
    REQUIRE(violations.empty());
  }
}

TEST_CASE("schedule JSON lists placements and aggregates") {
  const Scenario s = ts::minimal_scenario(100, 10, 1000, 2000);
  const Schedule sched = build_schedule(s, genome({0}, {0.5}, {1}));
  const std::string json = schedule_to_json(sched);
  CHECK(json.find("\"placements\"") != std::string::npos);
  CHECK(json.find("\"makespan_s\"") != std::string::npos);
  CHECK(json.find("\"total_profit\"") != std::string::npos);
  CHECK(json.find("\"J1\"") != std::string::npos);
}
