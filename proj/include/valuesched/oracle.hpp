#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "valuesched/encoding.hpp"
#include "valuesched/scheduler.hpp"

namespace valuesched {

struct OracleLimits {
  int max_jobs = 4;
  int max_options_per_job = 3;
  std::uint64_t enumeration_cap = 1'000'000;
};

struct InstanceTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive ground truth on tiny instances: evaluates every option
// assignment x dispatch permutation x inclusion subset through the same
// evaluator the engine uses and dominance-filters the results. The
// returned front is sorted by makespan ascending. Throws
// InstanceTooLargeError when the instance exceeds the limits.
std::vector<ObjectiveVector> enumerate_front(const ScenarioIndex& index, Variant variant,
                                             const OracleLimits& limits = {});
std::vector<ObjectiveVector> enumerate_front(const Scenario& scenario, Variant variant,
                                             const OracleLimits& limits = {});

}  // namespace valuesched
