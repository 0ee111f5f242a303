#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "valuesched/valuecurve.hpp"

namespace valuesched {

struct Machine {
  std::string id;
  std::string label;

  bool operator==(const Machine&) const = default;
};

// At most one member machine may process at any instant.
struct MutexGroup {
  std::vector<std::string> machine_ids;  // at least 2, unique

  bool operator==(const MutexGroup&) const = default;
};

// Mandatory idle separation between two consecutive jobs on machine_id
// when the earlier job carries from_class and the later one to_class.
struct GapRule {
  std::string machine_id;
  std::string from_class;
  std::string to_class;
  double gap_s = 0;

  bool operator==(const GapRule&) const = default;
};

struct ProcessingOption {
  std::string machine_id;
  std::string mode_id;
  double duration_s = 0;   // > 0
  double max_profit = 0;   // value paid when the order completes on the plateau

  bool operator==(const ProcessingOption&) const = default;
};

struct Job {
  std::string id;
  std::string gap_class;   // defaults to the job's own id
  std::vector<ProcessingOption> options;  // non-empty

  bool operator==(const Job&) const = default;
};

struct Order {
  std::string id;
  double arrival_time_s = 0;
  ValueCurve curve;
  std::vector<Job> jobs;   // non-empty
  std::vector<std::pair<std::string, std::string>> precedence;  // (pred, succ), intra-order, acyclic

  bool operator==(const Order&) const = default;
};

struct Scenario {
  std::vector<Machine> machines;
  std::vector<MutexGroup> mutex_groups;
  std::vector<GapRule> gap_rules;
  std::vector<Order> orders;

  bool operator==(const Scenario&) const = default;
};

// Violations are data, not failures: an empty report means the scenario
// satisfies every structural invariant and is safe for all downstream
// modules.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate_scenario(const Scenario& scenario);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario file format: a JSON object with keys `machines`, `mutex_groups`,
// `gap_rules`, `orders`. See README for the field-by-field description.
// load throws ParseError carrying the offending field path; save(load(x))
// parses back to a structurally equal Scenario.
Scenario load_scenario(std::string_view bytes);
std::string save_scenario(const Scenario& scenario);

}  // namespace valuesched
