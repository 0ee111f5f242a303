#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "valuesched/model.hpp"
#include "valuesched/rng.hpp"
#include "valuesched/scheduler.hpp"

namespace valuesched::testsupport {

inline std::string data_path(const std::string& name) {
  const char* dir = std::getenv("VALUESCHED_DATA_DIR");
  return (dir ? std::string(dir) : std::string("data")) + "/" + name;
}

// --- small builders -------------------------------------------------------

inline Machine machine(std::string id) { return {id, "Machine " + id}; }

inline ProcessingOption option(std::string machine_id, std::string mode_id, double duration_s,
                               double max_profit) {
  return {std::move(machine_id), std::move(mode_id), duration_s, max_profit};
}

inline Job job(std::string id, std::vector<ProcessingOption> options) {
  Job j;
  j.id = id;
  j.gap_class = std::move(id);
  j.options = std::move(options);
  return j;
}

inline Order order(std::string id, double arrival, ValueCurve curve, std::vector<Job> jobs,
                   std::vector<std::pair<std::string, std::string>> precedence = {}) {
  Order o;
  o.id = std::move(id);
  o.arrival_time_s = arrival;
  o.curve = curve;
  o.jobs = std::move(jobs);
  o.precedence = std::move(precedence);
  return o;
}

// One machine, one order, one job, one option; valid by construction.
inline Scenario minimal_scenario(double duration = 100, double profit = 10, double d = 100,
                                 double z = 200) {
  Scenario s;
  s.machines = {machine("M1")};
  s.orders = {order("O1", 0, {d, z, 0}, {job("J1", {option("M1", "Mode 1", duration, profit)})})};
  return s;
}

// --- randomized instances -------------------------------------------------

struct RandomScenarioParams {
  int min_orders = 1;
  int max_orders = 4;
  int max_jobs_per_order = 3;
  int max_options = 3;
  int machines = 3;
  double mutex_prob = 0.3;
  double gap_prob = 0.3;
  double edge_prob = 0.4;
  double penalty_prob = 0.2;
  double max_arrival_s = 50;
  double duration_min_s = 5;
  double duration_max_s = 120;
  double profit_min = 10;
  double profit_max = 500;
};

inline Scenario random_scenario(Rng& rng, const RandomScenarioParams& p = {}) {
  Scenario s;
  for (int m = 0; m < p.machines; ++m) s.machines.push_back(machine("M" + std::to_string(m + 1)));

  if (p.machines >= 2 && rng.next_bool(p.mutex_prob)) {
    const auto a = rng.next_below(static_cast<std::uint64_t>(p.machines));
    auto b = rng.next_below(static_cast<std::uint64_t>(p.machines - 1));
    if (b >= a) ++b;
    s.mutex_groups.push_back(
        {{"M" + std::to_string(a + 1), "M" + std::to_string(b + 1)}});
  }

  const int orders =
      p.min_orders + static_cast<int>(rng.next_below(
                         static_cast<std::uint64_t>(p.max_orders - p.min_orders + 1)));
  const std::vector<std::string> shared_classes = {"alpha", "beta"};
  for (int o = 0; o < orders; ++o) {
    const std::string oid = "O" + std::to_string(o + 1);
    const double arrival = rng.next_double() * p.max_arrival_s;
    ValueCurve curve;
    curve.d_s = arrival + 20 + rng.next_double() * 300;
    curve.z_s = curve.d_s + 20 + rng.next_double() * 250;
    curve.penalty_rate = rng.next_bool(p.penalty_prob) ? rng.next_double() * 1e-3 : 0.0;

    const int jobs =
        1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.max_jobs_per_order)));
    std::vector<Job> order_jobs;
    for (int j = 0; j < jobs; ++j) {
      Job jb;
      jb.id = oid + "J" + std::to_string(j + 1);
      jb.gap_class = rng.next_bool(0.5)
                         ? shared_classes[static_cast<std::size_t>(rng.next_below(2))]
                         : jb.id;
      const int options =
          1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.max_options)));
      for (int k = 0; k < options; ++k) {
        jb.options.push_back(option(
            "M" + std::to_string(rng.next_below(static_cast<std::uint64_t>(p.machines)) + 1),
            "Mode " + std::to_string(k + 1),
            p.duration_min_s + rng.next_double() * (p.duration_max_s - p.duration_min_s),
            p.profit_min + rng.next_double() * (p.profit_max - p.profit_min)));
      }
      order_jobs.push_back(std::move(jb));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < jobs; ++a) {
      for (int b = a + 1; b < jobs; ++b) {
        if (rng.next_bool(p.edge_prob)) {
          edges.emplace_back(order_jobs[static_cast<std::size_t>(a)].id,
                             order_jobs[static_cast<std::size_t>(b)].id);
        }
      }
    }
    s.orders.push_back(order(oid, arrival, curve, std::move(order_jobs), std::move(edges)));
  }

  if (rng.next_bool(p.gap_prob)) {
    const int rules = 1 + static_cast<int>(rng.next_below(3));
    for (int r = 0; r < rules; ++r) {
      GapRule rule;
      rule.machine_id =
          "M" + std::to_string(rng.next_below(static_cast<std::uint64_t>(p.machines)) + 1);
      rule.from_class = shared_classes[static_cast<std::size_t>(rng.next_below(2))];
      rule.to_class = shared_classes[static_cast<std::size_t>(rng.next_below(2))];
      rule.gap_s = 1 + rng.next_double() * 40;
      s.gap_rules.push_back(std::move(rule));
    }
  }
  return s;
}

// Tiny instance for exhaustive-oracle comparisons: at most 3 jobs in
// total, at most 2 machines and 3 options per job, with curves short
// enough that the value decay shapes the front.
inline Scenario tiny_instance(Rng& rng, bool with_mutex, bool with_gap) {
  RandomScenarioParams p;
  p.machines = with_mutex ? 2 : 1 + static_cast<int>(rng.next_below(2));
  p.mutex_prob = with_mutex ? 1.0 : 0.0;
  p.gap_prob = with_gap ? 1.0 : 0.0;
  p.max_orders = 3;
  p.max_jobs_per_order = 2;
  p.penalty_prob = 0.0;
  p.max_arrival_s = 20;

  Scenario s;
  while (true) {
    s = random_scenario(rng, p);
    int jobs = 0;
    for (const Order& o : s.orders) jobs += static_cast<int>(o.jobs.size());
    if (jobs <= 3) break;
  }
  // Tighten the curves so several elements finish on the ramp or late.
  for (Order& o : s.orders) {
    o.curve.d_s = o.arrival_time_s + 20 + rng.next_double() * 120;
    o.curve.z_s = o.curve.d_s + 30 + rng.next_double() * 150;
  }
  return s;
}

inline DecodedGenome random_genome(const ScenarioIndex& index, bool selection, Rng& rng) {
  DecodedGenome g;
  for (int j = 0; j < index.job_count(); ++j) {
    g.allocation.push_back(
        static_cast<std::int32_t>(rng.next_below(index.job(j).options.size())));
    g.priority.push_back(rng.next_double());
  }
  for (int o = 0; o < index.order_count(); ++o) {
    g.included.push_back(selection ? (rng.next_bool(0.5) ? 1 : 0) : 1);
  }
  return g;
}

// --- independent feasibility verifier --------------------------------------
//
// Checks a Schedule against the raw Scenario without going through
// ScenarioIndex or Evaluator, so evaluator bugs cannot hide themselves.

inline std::vector<std::string> schedule_violations(const Scenario& s,
                                                    const std::set<std::string>& included_orders,
                                                    const Schedule& sched) {
  std::vector<std::string> out;
  const double eps = 1e-9;

  struct JobInfo {
    const Order* order = nullptr;
    const Job* job = nullptr;
  };
  std::map<std::string, JobInfo> jobs;
  for (const Order& o : s.orders) {
    for (const Job& j : o.jobs) jobs[j.id] = {&o, &j};
  }

  std::map<std::string, const Placement*> by_job;
  for (const Placement& p : sched.placements) {
    if (!by_job.emplace(p.job_id, &p).second) {
      out.push_back("job " + p.job_id + " placed twice");
    }
  }

  for (const Order& o : s.orders) {
    const bool on = included_orders.count(o.id) > 0;
    for (const Job& j : o.jobs) {
      const bool placed = by_job.count(j.id) > 0;
      if (on && !placed) out.push_back("included job " + j.id + " missing");
      if (!on && placed) out.push_back("excluded job " + j.id + " was placed");
    }
  }

  for (const Placement& p : sched.placements) {
    const auto it = jobs.find(p.job_id);
    if (it == jobs.end()) {
      out.push_back("placement for unknown job " + p.job_id);
      continue;
    }
    const Order& o = *it->second.order;
    const Job& j = *it->second.job;
    const ProcessingOption* opt = nullptr;
    for (const ProcessingOption& cand : j.options) {
      if (cand.machine_id == p.machine_id && cand.mode_id == p.mode_id) opt = &cand;
    }
    if (!opt) {
      out.push_back("job " + p.job_id + " placed on an option it does not offer");
      continue;
    }
    if (std::abs(p.end_s - (p.start_s + opt->duration_s)) > eps) {
      out.push_back("job " + p.job_id + " end does not equal start + duration");
    }
    if (p.start_s < o.arrival_time_s - eps) {
      out.push_back("job " + p.job_id + " starts before its order arrives");
    }
  }

  // Disjointness per machine and per mutex group.
  auto check_disjoint = [&out](const std::string& what,
                               std::vector<const Placement*> placements) {
    std::sort(placements.begin(), placements.end(),
              [](const Placement* a, const Placement* b) { return a->start_s < b->start_s; });
    for (std::size_t i = 1; i < placements.size(); ++i) {
      if (placements[i]->start_s < placements[i - 1]->end_s - 1e-9) {
        out.push_back(what + ": " + placements[i - 1]->job_id + " and " +
                      placements[i]->job_id + " overlap");
      }
    }
  };
  std::map<std::string, std::vector<const Placement*>> by_machine;
  for (const Placement& p : sched.placements) by_machine[p.machine_id].push_back(&p);
  for (const auto& [mid, ps] : by_machine) check_disjoint("machine " + mid, ps);
  for (const MutexGroup& g : s.mutex_groups) {
    std::vector<const Placement*> ps;
    for (const std::string& mid : g.machine_ids) {
      const auto it = by_machine.find(mid);
      if (it != by_machine.end()) ps.insert(ps.end(), it->second.begin(), it->second.end());
    }
    check_disjoint("mutex group", ps);
  }

  // Precedence inside included orders.
  for (const Order& o : s.orders) {
    if (!included_orders.count(o.id)) continue;
    for (const auto& [pred, succ] : o.precedence) {
      const auto a = by_job.find(pred);
      const auto b = by_job.find(succ);
      if (a == by_job.end() || b == by_job.end()) continue;  // reported above
      if (b->second->start_s < a->second->end_s - eps) {
        out.push_back("precedence " + pred + " -> " + succ + " violated");
      }
    }
  }

  // Gap rules between consecutive placements on one machine.
  for (const auto& [mid, ps_in] : by_machine) {
    std::vector<const Placement*> ps = ps_in;
    std::sort(ps.begin(), ps.end(),
              [](const Placement* a, const Placement* b) { return a->start_s < b->start_s; });
    for (std::size_t i = 1; i < ps.size(); ++i) {
      const Job* prev = jobs.at(ps[i - 1]->job_id).job;
      const Job* next = jobs.at(ps[i]->job_id).job;
      double required = 0;
      for (const GapRule& r : s.gap_rules) {
        if (r.machine_id == mid && r.from_class == prev->gap_class &&
            r.to_class == next->gap_class) {
          required = std::max(required, r.gap_s);
        }
      }
      if (ps[i]->start_s - ps[i - 1]->end_s < required - eps) {
        out.push_back("gap rule violated between " + prev->id + " and " + next->id + " on " +
                      mid);
      }
    }
  }

  // Aggregates: makespan, completion map, profit, element count.
  double makespan = 0;
  for (const Placement& p : sched.placements) makespan = std::max(makespan, p.end_s);
  if (std::abs(makespan - sched.makespan_s) > eps) {
    out.push_back("makespan does not match the latest placement end");
  }
  if (static_cast<int>(included_orders.size()) != sched.elements_produced) {
    out.push_back("elements_produced does not match the inclusion set");
  }
  double profit = 0;
  for (const Order& o : s.orders) {
    if (!included_orders.count(o.id)) continue;
    double completion = 0;
    double value = 0;
    for (const Job& j : o.jobs) {
      const auto it = by_job.find(j.id);
      if (it == by_job.end()) continue;
      completion = std::max(completion, it->second->end_s);
      for (const ProcessingOption& cand : j.options) {
        if (cand.machine_id == it->second->machine_id && cand.mode_id == it->second->mode_id) {
          value += cand.max_profit;
        }
      }
    }
    const auto et = sched.order_completion.find(o.id);
    if (et == sched.order_completion.end()) {
      out.push_back("order_completion missing for " + o.id);
    } else if (std::abs(et->second - completion) > eps) {
      out.push_back("order_completion wrong for " + o.id);
    }
    profit += value * curve_factor(completion, o.curve);
  }
  const double profit_tol = 1e-9 * std::max(1.0, std::abs(profit));
  if (std::abs(profit - sched.total_profit) > profit_tol) {
    out.push_back("total_profit does not match the placements");
  }
  return out;
}

// Included-order ids implied by a decoded genome, for the verifier.
inline std::set<std::string> included_ids(const ScenarioIndex& index, const DecodedGenome& g) {
  std::set<std::string> ids;
  for (int o = 0; o < index.order_count(); ++o) {
    if (g.included[static_cast<std::size_t>(o)]) ids.insert(index.order(o).source->id);
  }
  return ids;
}

}  // namespace valuesched::testsupport
