#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "support/testsupport.hpp"
#include "valuesched/harness.hpp"

using namespace valuesched;
namespace ts = valuesched::testsupport;

namespace {

Chromosome dummy_genome() {
  Chromosome c;
  c.alloc = {0};
  c.prio = {0.5};
  return c;
}

ArchiveEntry entry(double makespan, double profit, int elements = 1) {
  return {{makespan, profit}, elements, dummy_genome()};
}

MoeadConfig tiny_cfg(std::uint64_t seed = 1) {
  MoeadConfig cfg;
  cfg.population = 10;
  cfg.generations = 10;
  cfg.neighborhood_t = 4;
  cfg.seed = seed;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("generated books have the documented shape") {
  GeneratorSpec spec;
  Rng rng(41);
  const Scenario s = generate_scenario(spec, 14, rng);
  CHECK(validate_scenario(s).ok());
  REQUIRE(s.orders.size() == 14);
  REQUIRE(s.machines.size() == 3);
  for (const Order& o : s.orders) {
    REQUIRE(o.jobs.size() == 1);
    const Job& job = o.jobs[0];
    REQUIRE(job.options.size() == 12);
    CHECK(o.arrival_time_s == 0);
    CHECK(o.curve.d_s == 30000);
    CHECK(o.curve.z_s == 40000);

    std::map<std::string, std::vector<const ProcessingOption*>> by_machine;
    for (const ProcessingOption& opt : job.options) {
      CHECK(opt.duration_s >= spec.duration_min_s);
      CHECK(opt.duration_s <= spec.duration_max_s);
      by_machine[opt.machine_id].push_back(&opt);
    }
    REQUIRE(by_machine.size() == 3);
    for (const auto& [mid, opts] : by_machine) {
      REQUIRE(opts.size() == 4);
      for (std::size_t i = 1; i < opts.size(); ++i) {
        CHECK(opts[i - 1]->duration_s <= opts[i]->duration_s);
        CHECK(opts[i - 1]->max_profit < opts[i]->max_profit);
      }
    }
    // Tiers: the last machine is strictly faster and dearer than the first.
    CHECK(by_machine.at("M3").back()->duration_s < by_machine.at("M1").front()->duration_s);
    CHECK(by_machine.at("M3").front()->max_profit > by_machine.at("M1").back()->max_profit);
  }
}

TEST_CASE("generation is deterministic in the rng stream") {
  GeneratorSpec spec;
  Rng a = Rng::stream(5, 1, 2);
  Rng b = Rng::stream(5, 1, 2);
  CHECK(generate_scenario(spec, 9, a) == generate_scenario(spec, 9, b));
}

TEST_CASE("stress flags add a mutex group and gap rules") {
  GeneratorSpec spec;
  spec.with_mutex_group = true;
  spec.with_gap_rules = true;
  Rng rng(43);
  const Scenario s = generate_scenario(spec, 4, rng);
  CHECK(validate_scenario(s).ok());
  REQUIRE(s.mutex_groups.size() == 1);
  CHECK(s.mutex_groups[0].machine_ids.size() == 2);
  CHECK(s.gap_rules.size() == 2);
  CHECK(s.orders[0].jobs[0].gap_class == "even-lot");
  CHECK(s.orders[1].jobs[0].gap_class == "odd-lot");
}

TEST_CASE("the reference book matches the catalogue element") {
  const Scenario s = reference_scenario();
  CHECK(validate_scenario(s).ok());
  REQUIRE(s.orders.size() == 14);
  const Job& e01 = s.orders[0].jobs[0];
  REQUIRE(e01.options.size() == 12);
  CHECK(e01.options[8] == ProcessingOption{"M3", "Mode 1", 1256.2, 481.6});
  CHECK(e01.options[0] == ProcessingOption{"M1", "Mode 1", 2833.5, 167.0});
  CHECK(e01.options[11] == ProcessingOption{"M3", "Mode 4", 1974.1, 596.9});
  for (const Order& o : s.orders) {
    CHECK(o.curve.d_s == 30000);
    CHECK(o.curve.z_s == 40000);
    CHECK(o.jobs[0].options.size() == 12);
  }
}

TEST_CASE("default sweep pairs") {
  const auto pairs = default_dz_pairs();
  REQUIRE(pairs.size() == 14);
  for (const auto& [d, z] : pairs) CHECK(d < z);
  CHECK(pairs.front() == std::pair<double, double>{5000, 10000});
  CHECK(pairs.back() == std::pair<double, double>{35000, 45000});
}

TEST_CASE("representative point rules") {
  CHECK(representative_point({entry(100, 10), entry(200, 20)}).profit == 20);
  CHECK(representative_point({entry(100, 10), entry(200, 20)}).makespan_s == 200);

  const RepresentativePoint tied = representative_point({entry(100, 20), entry(200, 20)});
  CHECK(tied.profit == 20);
  CHECK(tied.makespan_s == 100);

  const RepresentativePoint tied2 =
      representative_point({entry(100, 20, 3), entry(100, 20, 2)});
  CHECK(tied2.elements_produced == 2);

  const RepresentativePoint single = representative_point({entry(7, 3, 1)});
  CHECK(single.makespan_s == 7);
  CHECK_THROWS_AS(representative_point(std::vector<ArchiveEntry>{}), std::invalid_argument);
}

TEST_CASE("sweep reports one row per pair and variant") {
  SweepSpec spec;
  spec.dz_pairs = {{150, 250}};
  spec.optimizer = tiny_cfg();
  Scenario base;
  base.machines = {ts::machine("M1")};
  base.orders = {ts::order("O1", 0, {999, 1000, 0},
                           {ts::job("O1J1", {ts::option("M1", "Mode 1", 100, 100)})}),
                 ts::order("O2", 0, {999, 1000, 0},
                           {ts::job("O2J1", {ts::option("M1", "Mode 1", 100, 100)})})};
  const SweepReport report = run_sweep(spec, base);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].variant == Variant::standard);
  CHECK(report.rows[1].variant == Variant::selection);
  for (const SweepRow& row : report.rows) {
    CHECK(row.d_s == 150);
    CHECK(row.z_s == 250);
  }
  // Standard always manufactures the whole book.
  CHECK(report.rows[0].elements_produced == 2);
  CHECK(report.rows[1].elements_produced <= 2);

  const std::string csv = sweep_to_csv(report);
  CHECK(csv.rfind("d_s,z_s,variant,profit,makespan_s,elements_produced\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  CHECK_THROWS_AS(run_sweep(SweepSpec{{{10, 10}}, tiny_cfg(), 1}, base),
                  std::invalid_argument);
}

TEST_CASE("spearman rank correlation") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {10, 40, 20, 30}) == doctest::Approx(0.4));
  // Tied xs take average ranks.
  CHECK(spearman({1, 1, 2, 2}, {1, 2, 3, 4}) == doctest::Approx(4.0 / std::sqrt(20.0)));
  CHECK(spearman({1, 1, 1}, {1, 2, 3}) == 0.0);
  CHECK(spearman({}, {}) == 0.0);
}

TEST_CASE("trend study aggregates per size and variant") {
  GeneratorSpec spec;
  spec.element_counts = {2, 3};
  spec.scenarios_per_count = 2;
  spec.duration_min_s = 50;
  spec.duration_max_s = 150;
  spec.d_s = 400;
  spec.z_s = 700;
  spec.seed = 77;
  const TrendReport report = trend_study(spec, tiny_cfg());
  REQUIRE(report.rows.size() == 4);
  REQUIRE(report.runs.size() == 8);
  CHECK(report.rows[0].size == 2);
  CHECK(report.rows[0].variant == Variant::standard);
  CHECK(report.rows[1].variant == Variant::selection);
  CHECK(report.rows[2].size == 3);
  for (const TrendRow& row : report.rows) {
    CHECK(row.mean_makespan_s > 0);
    CHECK(row.spearman_makespan >= -1.0);
    CHECK(row.spearman_makespan <= 1.0);
  }
  const std::string csv = trend_to_csv(report);
  CHECK(csv.rfind("size,variant,mean_makespan_s,mean_profit,spearman_makespan\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
