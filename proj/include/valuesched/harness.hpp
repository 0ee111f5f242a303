#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "valuesched/moead.hpp"
#include "valuesched/model.hpp"
#include "valuesched/rng.hpp"

namespace valuesched {

// Knobs for the synthetic order-book generator. Machines form quality
// tiers: the higher the machine number, the shorter its durations and
// the higher its prices, with prices rising with duration inside one
// machine.
struct GeneratorSpec {
  std::vector<int> element_counts = {7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  int scenarios_per_count = 10;
  int machines = 3;
  int modes_per_machine = 4;
  double duration_min_s = 1200;
  double duration_max_s = 3200;
  double base_profit = 170;          // slowest tier's price level
  double tier_multiplier = 1.7;      // price step per tier
  double within_machine_slope = 0.25;  // price spread across one machine's modes
  double element_scale_min = 0.8;    // per-element price assortment
  double element_scale_max = 1.25;
  double d_s = 30000;
  double z_s = 40000;
  bool with_mutex_group = false;     // adds a group over the two slowest machines
  bool with_gap_rules = false;       // alternates two job classes with a changeover gap
  std::uint64_t seed = 0;
};

// One-job orders E01..E<size>, arrival 0, shared curve, modes_per_machine
// options on every machine. Deterministic for a given (spec, size, rng state).
Scenario generate_scenario(const GeneratorSpec& spec, int size, Rng& rng);

// The bundled 14-element order book: element E01 priced and timed like a
// single catalogue element, E02..E14 scaled variants of it with fixed
// assorted duration and price factors, curve D=30000 s / Z=40000 s.
Scenario reference_scenario();

// The 14 (D, Z) pairs of the default sweep.
std::vector<std::pair<double, double>> default_dz_pairs();

struct RepresentativePoint {
  double profit = 0;
  double makespan_s = 0;
  int elements_produced = 0;
};

// The entry with maximum profit; ties by minimum makespan, then minimum
// elements_produced. Throws std::invalid_argument on an empty archive.
RepresentativePoint representative_point(const std::vector<ArchiveEntry>& entries);
RepresentativePoint representative_point(const ParetoArchive& archive);

struct SweepSpec {
  std::vector<std::pair<double, double>> dz_pairs = default_dz_pairs();
  MoeadConfig optimizer;   // optimizer.seed is the sweep master seed
  int seeds_per_cell = 1;  // archives of repeated runs merge before reporting
};

struct SweepRow {
  double d_s = 0;
  double z_s = 0;
  Variant variant = Variant::standard;
  double profit = 0;
  double makespan_s = 0;
  int elements_produced = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // pair-major, standard before selection
};

// Re-runs the optimizer on `base` with every order's curve replaced by
// each (D, Z) pair, for both variants.
SweepReport run_sweep(const SweepSpec& spec, const Scenario& base);
std::string sweep_to_csv(const SweepReport& report);

struct TrendRow {
  int size = 0;
  Variant variant = Variant::standard;
  double mean_makespan_s = 0;
  double mean_profit = 0;
  double spearman_makespan = 0;  // rank correlation vs size across the variant's runs
};

struct TrendReport {
  std::vector<TrendRow> rows;
  // Raw representative points per run, for downstream analysis:
  // (size, variant, point), in run order.
  std::vector<std::tuple<int, Variant, RepresentativePoint>> runs;
};

TrendReport trend_study(const GeneratorSpec& spec, const MoeadConfig& optimizer);
std::string trend_to_csv(const TrendReport& report);

// Spearman rank correlation with average ranks on ties; 0 for fewer than
// two points or a flat sequence.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace valuesched
