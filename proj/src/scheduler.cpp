#include "valuesched/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "valuesched/valuecurve.hpp"

namespace valuesched {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.makespan_s > b.makespan_s) return false;
  if (a.total_profit < b.total_profit) return false;
  return a.makespan_s < b.makespan_s || a.total_profit > b.total_profit;
}

ScenarioIndex::ScenarioIndex(const Scenario& scenario) : scenario_(&scenario) {
  std::map<std::string, int> machine_lookup;
  for (const Machine& m : scenario.machines) {
    machine_lookup.emplace(m.id, static_cast<int>(machine_ids_.size()));
    machine_ids_.push_back(m.id);
  }
  machine_groups_.resize(machine_ids_.size());
  group_count_ = static_cast<int>(scenario.mutex_groups.size());
  for (int g = 0; g < group_count_; ++g) {
    for (const std::string& id : scenario.mutex_groups[g].machine_ids) {
      machine_groups_[machine_lookup.at(id)].push_back(g);
    }
  }

  // Global order: order id ascending, then job id ascending. Gene
  // positions, tie-breaks and the genome string all use this order.
  std::vector<const Order*> sorted_orders;
  for (const Order& o : scenario.orders) sorted_orders.push_back(&o);
  std::sort(sorted_orders.begin(), sorted_orders.end(),
            [](const Order* a, const Order* b) { return a->id < b->id; });

  std::map<std::string, int> class_lookup;
  auto intern_class = [&class_lookup](const std::string& name) {
    return class_lookup.emplace(name, static_cast<int>(class_lookup.size())).first->second;
  };

  for (const Order* order : sorted_orders) {
    OrderRef oref;
    oref.arrival_s = order->arrival_time_s;
    oref.curve = order->curve;
    oref.source = order;
    const int order_idx = static_cast<int>(orders_.size());

    std::vector<const Job*> sorted_jobs;
    for (const Job& j : order->jobs) sorted_jobs.push_back(&j);
    std::sort(sorted_jobs.begin(), sorted_jobs.end(),
              [](const Job* a, const Job* b) { return a->id < b->id; });

    for (const Job* job : sorted_jobs) {
      JobRef jref;
      jref.order = order_idx;
      jref.gap_class = intern_class(job->gap_class);
      jref.source = job;
      for (const ProcessingOption& opt : job->options) {
        auto it = machine_lookup.find(opt.machine_id);
        if (it == machine_lookup.end()) {
          throw std::invalid_argument("ScenarioIndex: option references unknown machine '" +
                                      opt.machine_id + "'");
        }
        jref.options.push_back({it->second, opt.duration_s, opt.max_profit});
      }
      const int job_idx = static_cast<int>(jobs_.size());
      oref.jobs.push_back(job_idx);
      job_lookup_.emplace(job->id, job_idx);
      jobs_.push_back(std::move(jref));
    }
    order_lookup_.emplace(order->id, order_idx);
    orders_.push_back(std::move(oref));
  }

  for (const Order* order : sorted_orders) {
    for (const auto& [pred, succ] : order->precedence) {
      const int p = job_index(pred);
      const int s = job_index(succ);
      if (p < 0 || s < 0) {
        throw std::invalid_argument("ScenarioIndex: precedence references unknown job");
      }
      jobs_[s].preds.push_back(p);
      jobs_[p].succs.push_back(s);
    }
  }

  gaps_.resize(machine_ids_.size());
  for (const GapRule& rule : scenario.gap_rules) {
    auto mit = machine_lookup.find(rule.machine_id);
    if (mit == machine_lookup.end()) {
      throw std::invalid_argument("ScenarioIndex: gap rule references unknown machine '" +
                                  rule.machine_id + "'");
    }
    auto cit_from = class_lookup.find(rule.from_class);
    auto cit_to = class_lookup.find(rule.to_class);
    // Rules naming classes no job carries can never fire.
    if (cit_from == class_lookup.end() || cit_to == class_lookup.end()) continue;
    const std::pair<int, int> key{cit_from->second, cit_to->second};
    auto& table = gaps_[mit->second];
    auto it = std::find_if(table.begin(), table.end(),
                           [&key](const auto& e) { return e.first == key; });
    if (it == table.end()) {
      table.push_back({key, rule.gap_s});
    } else {
      it->second = std::max(it->second, rule.gap_s);
    }
  }
  for (auto& table : gaps_) std::sort(table.begin(), table.end());
}

double ScenarioIndex::gap_after(int m, int from_class, int to_class) const {
  const auto& table = gaps_[m];
  const std::pair<int, int> key{from_class, to_class};
  auto it = std::lower_bound(table.begin(), table.end(), key,
                             [](const auto& e, const auto& k) { return e.first < k; });
  if (it != table.end() && it->first == key) return it->second;
  return 0;
}

int ScenarioIndex::job_index(const std::string& job_id) const {
  auto it = job_lookup_.find(job_id);
  return it == job_lookup_.end() ? -1 : it->second;
}

int ScenarioIndex::order_index(const std::string& order_id) const {
  auto it = order_lookup_.find(order_id);
  return it == order_lookup_.end() ? -1 : it->second;
}

Evaluator::Evaluator(const ScenarioIndex& index) : idx_(&index) {
  const auto n = static_cast<std::size_t>(index.job_count());
  job_end_.resize(n);
  remaining_preds_.resize(n);
  active_.resize(n);
  machine_cursor_.resize(static_cast<std::size_t>(index.machine_count()));
  machine_last_class_.resize(machine_cursor_.size());
  group_cursor_.resize(static_cast<std::size_t>(index.group_count()));
  order_completion_.resize(static_cast<std::size_t>(index.order_count()));
  order_value_.resize(order_completion_.size());
}

EvalResult Evaluator::run(const DecodedGenome& genome) { return dispatch(genome, nullptr); }

EvalResult Evaluator::run(const DecodedGenome& genome, std::vector<IndexedPlacement>& placements) {
  placements.clear();
  return dispatch(genome, &placements);
}

EvalResult Evaluator::dispatch(const DecodedGenome& genome,
                               std::vector<IndexedPlacement>* placements) {
  const ScenarioIndex& idx = *idx_;
  const int n = idx.job_count();
  const int orders = idx.order_count();

  int active_count = 0;
  for (int j = 0; j < n; ++j) {
    const auto& job = idx.job(j);
    const bool on = genome.included[static_cast<std::size_t>(job.order)] != 0;
    active_[static_cast<std::size_t>(j)] = on ? 1 : 0;
    remaining_preds_[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(job.preds.size());
    job_end_[static_cast<std::size_t>(j)] = -1;
    if (on) ++active_count;
  }
  std::fill(machine_cursor_.begin(), machine_cursor_.end(), 0.0);
  std::fill(machine_last_class_.begin(), machine_last_class_.end(), -1);
  std::fill(group_cursor_.begin(), group_cursor_.end(), 0.0);
  std::fill(order_completion_.begin(), order_completion_.end(), 0.0);
  std::fill(order_value_.begin(), order_value_.end(), 0.0);

  double makespan = 0;
  for (int placed = 0; placed < active_count; ++placed) {
    // Highest-priority ready job; ties go to the lower global index.
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (!active_[static_cast<std::size_t>(j)]) continue;
      if (job_end_[static_cast<std::size_t>(j)] >= 0) continue;
      if (remaining_preds_[static_cast<std::size_t>(j)] > 0) continue;
      if (best < 0 || genome.priority[static_cast<std::size_t>(j)] >
                          genome.priority[static_cast<std::size_t>(best)]) {
        best = j;
      }
    }
    const auto& job = idx.job(best);
    const auto& opt = job.options[static_cast<std::size_t>(
        genome.allocation[static_cast<std::size_t>(best)])];
    const int m = opt.machine;

    double start = idx.order(job.order).arrival_s;
    for (int p : job.preds) {
      start = std::max(start, job_end_[static_cast<std::size_t>(p)]);
    }
    const int last_class = machine_last_class_[static_cast<std::size_t>(m)];
    double earliest_on_machine = machine_cursor_[static_cast<std::size_t>(m)];
    if (last_class >= 0) {
      earliest_on_machine += idx.gap_after(m, last_class, job.gap_class);
    }
    start = std::max(start, earliest_on_machine);
    for (int g : idx.machine_groups(m)) {
      start = std::max(start, group_cursor_[static_cast<std::size_t>(g)]);
    }

    const double end = start + opt.duration_s;
    job_end_[static_cast<std::size_t>(best)] = end;
    machine_cursor_[static_cast<std::size_t>(m)] = end;
    machine_last_class_[static_cast<std::size_t>(m)] = job.gap_class;
    for (int g : idx.machine_groups(m)) {
      group_cursor_[static_cast<std::size_t>(g)] = end;
    }
    order_completion_[static_cast<std::size_t>(job.order)] =
        std::max(order_completion_[static_cast<std::size_t>(job.order)], end);
    order_value_[static_cast<std::size_t>(job.order)] += opt.max_profit;
    makespan = std::max(makespan, end);
    for (int s : job.succs) --remaining_preds_[static_cast<std::size_t>(s)];

    if (placements) {
      placements->push_back(
          {best, genome.allocation[static_cast<std::size_t>(best)], start, end});
    }
  }

  EvalResult result;
  result.objectives.makespan_s = makespan;
  double profit = 0;
  int produced = 0;
  for (int o = 0; o < orders; ++o) {
    if (!genome.included[static_cast<std::size_t>(o)]) continue;
    ++produced;
    profit += order_value_[static_cast<std::size_t>(o)] *
              curve_factor(order_completion_[static_cast<std::size_t>(o)], idx.order(o).curve);
  }
  result.objectives.total_profit = profit;
  result.elements_produced = produced;
  return result;
}

Schedule build_schedule(const ScenarioIndex& index, const DecodedGenome& genome) {
  Evaluator ev(index);
  std::vector<IndexedPlacement> indexed;
  const EvalResult res = ev.run(genome, indexed);

  Schedule out;
  out.makespan_s = res.objectives.makespan_s;
  out.total_profit = res.objectives.total_profit;
  out.elements_produced = res.elements_produced;
  out.placements.reserve(indexed.size());
  std::vector<double> completion(static_cast<std::size_t>(index.order_count()), 0.0);
  for (const IndexedPlacement& p : indexed) {
    const auto& job = index.job(p.job);
    const ProcessingOption& opt = job.source->options[static_cast<std::size_t>(p.option)];
    out.placements.push_back({job.source->id, opt.machine_id, opt.mode_id, p.start_s, p.end_s});
    completion[static_cast<std::size_t>(job.order)] =
        std::max(completion[static_cast<std::size_t>(job.order)], p.end_s);
  }
  for (int o = 0; o < index.order_count(); ++o) {
    if (genome.included[static_cast<std::size_t>(o)]) {
      out.order_completion[index.order(o).source->id] = completion[static_cast<std::size_t>(o)];
    }
  }
  return out;
}

Schedule build_schedule(const Scenario& scenario, const DecodedGenome& genome) {
  return build_schedule(ScenarioIndex(scenario), genome);
}

std::pair<Schedule, ObjectiveVector> evaluate(const ScenarioIndex& index,
                                              const DecodedGenome& genome) {
  Schedule s = build_schedule(index, genome);
  ObjectiveVector obj{s.makespan_s, s.total_profit};
  return {std::move(s), obj};
}

std::pair<Schedule, ObjectiveVector> evaluate(const Scenario& scenario,
                                              const DecodedGenome& genome) {
  return evaluate(ScenarioIndex(scenario), genome);
}

std::string schedule_to_json(const Schedule& schedule) {
  nlohmann::json root;
  root["placements"] = nlohmann::json::array();
  for (const Placement& p : schedule.placements) {
    root["placements"].push_back({{"job_id", p.job_id},
                                  {"machine_id", p.machine_id},
                                  {"mode_id", p.mode_id},
                                  {"start_s", p.start_s},
                                  {"end_s", p.end_s}});
  }
  root["order_completion"] = nlohmann::json::object();
  for (const auto& [id, et] : schedule.order_completion) {
    root["order_completion"][id] = et;
  }
  root["makespan_s"] = schedule.makespan_s;
  root["total_profit"] = schedule.total_profit;
  root["elements_produced"] = schedule.elements_produced;
  return root.dump(2) + "\n";
}

}  // namespace valuesched
