#include "valuesched/oracle.hpp"

#include <algorithm>
#include <string>

namespace valuesched {

namespace {

// Same dominance filter the engine archive uses, on bare objective
// vectors: sorted by makespan ascending, profit strictly ascending.
void front_insert(std::vector<ObjectiveVector>& front, const ObjectiveVector& obj) {
  auto pos = std::lower_bound(front.begin(), front.end(), obj.makespan_s,
                              [](const ObjectiveVector& e, double mk) { return e.makespan_s < mk; });
  if (pos != front.begin() && std::prev(pos)->total_profit >= obj.total_profit) return;
  if (pos != front.end() && pos->makespan_s == obj.makespan_s &&
      pos->total_profit >= obj.total_profit) {
    return;
  }
  auto last = pos;
  while (last != front.end() && last->total_profit <= obj.total_profit) ++last;
  if (pos == last) {
    front.insert(pos, obj);
  } else {
    *pos = obj;
    front.erase(pos + 1, last);
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap + 1;  // saturate just above the cap
  return a * b;
}

}  // namespace

std::vector<ObjectiveVector> enumerate_front(const ScenarioIndex& index, Variant variant,
                                             const OracleLimits& limits) {
  const int n = index.job_count();
  const int m = index.order_count();
  if (n > limits.max_jobs) {
    throw InstanceTooLargeError("oracle: " + std::to_string(n) + " jobs exceed the limit of " +
                                std::to_string(limits.max_jobs));
  }
  std::uint64_t size = 1;
  for (int j = 0; j < n; ++j) {
    const auto options = index.job(j).options.size();
    if (static_cast<int>(options) > limits.max_options_per_job) {
      throw InstanceTooLargeError("oracle: job has " + std::to_string(options) +
                                  " options, limit is " +
                                  std::to_string(limits.max_options_per_job));
    }
    size = checked_mul(size, options, limits.enumeration_cap);
  }
  for (int j = 2; j <= n; ++j) {
    size = checked_mul(size, static_cast<std::uint64_t>(j), limits.enumeration_cap);
  }
  if (variant == Variant::selection) {
    for (int o = 0; o < m; ++o) size = checked_mul(size, 2, limits.enumeration_cap);
  }
  if (size > limits.enumeration_cap) {
    throw InstanceTooLargeError("oracle: enumeration size exceeds the cap of " +
                                std::to_string(limits.enumeration_cap));
  }

  Evaluator evaluator(index);
  DecodedGenome genome;
  genome.allocation.assign(static_cast<std::size_t>(n), 0);
  genome.priority.assign(static_cast<std::size_t>(n), 0.0);
  genome.included.assign(static_cast<std::size_t>(m), 1);

  std::vector<ObjectiveVector> front;
  const std::uint64_t mask_count =
      variant == Variant::selection ? (std::uint64_t{1} << m) : 1;

  for (std::uint64_t mask = 0; mask < mask_count; ++mask) {
    std::vector<int> active;
    for (int o = 0; o < m; ++o) {
      const bool on = variant == Variant::standard || ((mask >> o) & 1) != 0;
      genome.included[static_cast<std::size_t>(o)] = on ? 1 : 0;
      if (on) {
        for (int j : index.order(o).jobs) active.push_back(j);
      }
    }
    std::sort(active.begin(), active.end());
    const std::size_t k = active.size();

    // Mixed-radix counter over the active jobs' option indices; idle
    // jobs keep allocation 0, which the evaluator never reads.
    std::fill(genome.allocation.begin(), genome.allocation.end(), 0);
    while (true) {
      std::vector<int> perm = active;
      do {
        for (std::size_t p = 0; p < k; ++p) {
          genome.priority[static_cast<std::size_t>(perm[p])] =
              static_cast<double>(k - p) / static_cast<double>(k + 1);
        }
        front_insert(front, evaluator.run(genome).objectives);
      } while (std::next_permutation(perm.begin(), perm.end()));

      std::size_t digit = 0;
      while (digit < k) {
        auto& gene = genome.allocation[static_cast<std::size_t>(active[digit])];
        const auto radix =
            static_cast<std::int32_t>(index.job(active[digit]).options.size());
        if (++gene < radix) break;
        gene = 0;
        ++digit;
      }
      if (digit == k) break;
    }
  }
  return front;
}

std::vector<ObjectiveVector> enumerate_front(const Scenario& scenario, Variant variant,
                                             const OracleLimits& limits) {
  const ScenarioIndex index(scenario);
  return enumerate_front(index, variant, limits);
}

}  // namespace valuesched
