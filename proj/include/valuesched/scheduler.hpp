#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "valuesched/model.hpp"

namespace valuesched {

// Objectives of a schedule: makespan is minimized, total profit maximized.
// minimized() is the internal all-minimization form used by the engine.
struct ObjectiveVector {
  double makespan_s = 0;
  double total_profit = 0;

  std::array<double, 2> minimized() const { return {makespan_s, -total_profit}; }
  bool operator==(const ObjectiveVector&) const = default;
};

// True when a is no worse than b in both objectives and strictly better
// in at least one (minimize makespan, maximize profit).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Genome in decoded, positional form. Vectors are aligned to the global
// job order (order id ascending, then job id ascending) and, for
// `included`, to the global order order. The standard variant decodes
// with every order included.
struct DecodedGenome {
  std::vector<std::int32_t> allocation;  // per job: option index into that job's options
  std::vector<double> priority;          // per job: dispatch priority in [0, 1)
  std::vector<std::uint8_t> included;    // per order: 0/1

  bool operator==(const DecodedGenome&) const = default;
};

// Read-only compiled view of a valid Scenario: ids interned to dense
// indices, jobs arranged in the global order used for gene positions and
// priority tie-breaks. The Scenario must outlive the index.
class ScenarioIndex {
 public:
  struct OptionRef {
    int machine = 0;
    double duration_s = 0;
    double max_profit = 0;
  };
  struct JobRef {
    int order = 0;
    int gap_class = 0;
    std::vector<OptionRef> options;   // same order as the source Job.options
    std::vector<int> preds;           // global job indices
    std::vector<int> succs;
    const Job* source = nullptr;
  };
  struct OrderRef {
    double arrival_s = 0;
    ValueCurve curve;
    std::vector<int> jobs;            // global job indices
    const Order* source = nullptr;
  };

  // Precondition: validate_scenario(scenario) is empty.
  explicit ScenarioIndex(const Scenario& scenario);

  const Scenario& scenario() const { return *scenario_; }
  int job_count() const { return static_cast<int>(jobs_.size()); }
  int order_count() const { return static_cast<int>(orders_.size()); }
  int machine_count() const { return static_cast<int>(machine_ids_.size()); }
  const JobRef& job(int j) const { return jobs_[j]; }
  const OrderRef& order(int o) const { return orders_[o]; }
  const std::string& machine_id(int m) const { return machine_ids_[m]; }
  const std::vector<int>& machine_groups(int m) const { return machine_groups_[m]; }
  int group_count() const { return group_count_; }
  // Non-negative mandatory gap after a job of class `from` before one of
  // class `to` on machine m; 0 when no rule matches.
  double gap_after(int m, int from_class, int to_class) const;

  int job_index(const std::string& job_id) const;    // -1 when unknown
  int order_index(const std::string& order_id) const;

 private:
  const Scenario* scenario_;
  std::vector<JobRef> jobs_;
  std::vector<OrderRef> orders_;
  std::vector<std::string> machine_ids_;
  std::vector<std::vector<int>> machine_groups_;
  int group_count_ = 0;
  std::vector<std::vector<std::pair<std::pair<int, int>, double>>> gaps_;  // per machine, sorted
  std::map<std::string, int> job_lookup_;
  std::map<std::string, int> order_lookup_;
};

struct EvalResult {
  ObjectiveVector objectives;
  int elements_produced = 0;
};

struct IndexedPlacement {
  int job = 0;
  int option = 0;
  double start_s = 0;
  double end_s = 0;
};

// Serial schedule-generation evaluator. One instance owns reusable
// workspace buffers, so it is cheap to call in a tight loop but not
// shareable across threads; use one Evaluator per worker.
class Evaluator {
 public:
  explicit Evaluator(const ScenarioIndex& index);

  EvalResult run(const DecodedGenome& genome);
  // Same arithmetic, additionally emits placements in dispatch order.
  EvalResult run(const DecodedGenome& genome, std::vector<IndexedPlacement>& placements);

 private:
  EvalResult dispatch(const DecodedGenome& genome, std::vector<IndexedPlacement>* placements);

  const ScenarioIndex* idx_;
  std::vector<double> job_end_;
  std::vector<std::int32_t> remaining_preds_;
  std::vector<std::uint8_t> active_;
  std::vector<double> machine_cursor_;
  std::vector<std::int32_t> machine_last_class_;
  std::vector<double> group_cursor_;
  std::vector<double> order_completion_;
  std::vector<double> order_value_;
};

struct Placement {
  std::string job_id;
  std::string machine_id;
  std::string mode_id;
  double start_s = 0;
  double end_s = 0;

  bool operator==(const Placement&) const = default;
};

struct Schedule {
  std::vector<Placement> placements;               // dispatch order
  std::map<std::string, double> order_completion;  // included orders only
  double makespan_s = 0;
  double total_profit = 0;
  int elements_produced = 0;
};

Schedule build_schedule(const ScenarioIndex& index, const DecodedGenome& genome);
Schedule build_schedule(const Scenario& scenario, const DecodedGenome& genome);

std::pair<Schedule, ObjectiveVector> evaluate(const ScenarioIndex& index, const DecodedGenome& genome);
std::pair<Schedule, ObjectiveVector> evaluate(const Scenario& scenario, const DecodedGenome& genome);

// JSON export consumed by external Gantt plotting.
std::string schedule_to_json(const Schedule& schedule);

}  // namespace valuesched
