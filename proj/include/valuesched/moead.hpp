#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valuesched/encoding.hpp"
#include "valuesched/scheduler.hpp"

namespace valuesched {

struct MoeadConfig {
  int population = 300;
  int generations = 500;
  int neighborhood_t = 20;       // neighbors per subproblem, 2..population
  int replacement_limit = 2;     // max incumbents one child may replace
  double crossover_rate = 0.9;
  std::optional<double> mutation_rate;  // per-gene; defaults to 1/L
  std::uint64_t seed = 0;
  // Worker threads for fitness evaluation; 0 = all hardware cores.
  // Affects wall time only, never results.
  int threads = 0;
};

// Evenly spaced two-objective weight vectors: (i/(N-1), 1 - i/(N-1)).
// Throws std::invalid_argument for population < 2.
std::vector<std::array<double, 2>> init_weights(int population);

// Indices of the `t` nearest weight vectors per subproblem (Euclidean
// distance, ties by index); each subproblem is its own first neighbor.
std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<std::array<double, 2>>& weights, int t);

// max_j w_j * |f_j - z_j| over the two components.
double tchebycheff(const std::array<double, 2>& f, const std::array<double, 2>& w,
                   const std::array<double, 2>& z);

struct ArchiveEntry {
  ObjectiveVector objectives;
  int elements_produced = 0;
  Chromosome genome;

  bool operator==(const ArchiveEntry&) const = default;
};

// External archive of mutually non-dominated points, kept sorted by
// makespan ascending (hence profit strictly ascending). Duplicate
// objective vectors are rejected, first entry wins.
class ParetoArchive {
 public:
  bool insert(const ObjectiveVector& objectives, int elements_produced,
              const Chromosome& genome);

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  bool operator==(const ParetoArchive&) const = default;

 private:
  std::vector<ArchiveEntry> entries_;
};

// Per-run observability, mainly for invariant checks: the ideal point
// (minimized form) after initialization and after every generation merge.
struct RunTrace {
  std::vector<std::array<double, 2>> ideal_after_generation;
};

// Decomposition search over the scenario. Deterministic for a fixed
// (scenario, config, variant) regardless of the thread count: every
// random draw comes from a stream named (seed, generation, subproblem),
// offspring of a generation are bred from the incumbents the generation
// started with, and ideal-point updates, neighbor replacement and
// archive inserts are merged in subproblem index order.
ParetoArchive run(const ScenarioIndex& index, const MoeadConfig& config, Variant variant,
                  RunTrace* trace = nullptr);
ParetoArchive run(const Scenario& scenario, const MoeadConfig& config, Variant variant,
                  RunTrace* trace = nullptr);

// CSV export: header makespan_s,profit,elements_produced,genome; one row
// per entry, makespan ascending. The genome field is double-quoted since
// genome strings contain commas.
std::string archive_to_csv(const ParetoArchive& archive);

}  // namespace valuesched
