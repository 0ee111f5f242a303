#include "valuesched/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace valuesched {

namespace {

using nlohmann::json;

const json& require_key(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object()) throw ParseError(ctx + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(ctx + "." + key + ": missing");
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require_key(obj, key, ctx);
  if (!v.is_string()) throw ParseError(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

double require_number(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require_key(obj, key, ctx);
  if (!v.is_number()) throw ParseError(ctx + "." + key + ": expected a number");
  return v.get<double>();
}

const json& require_array(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require_key(obj, key, ctx);
  if (!v.is_array()) throw ParseError(ctx + "." + key + ": expected an array");
  return v;
}

double optional_number(const json& obj, const char* key, double fallback, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) throw ParseError(ctx + "." + key + ": expected a number");
  return it->get<double>();
}

std::string optional_string(const json& obj, const char* key, std::string fallback,
                            const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_string()) throw ParseError(ctx + "." + key + ": expected a string");
  return it->get<std::string>();
}

Job parse_job(const json& j, const std::string& ctx) {
  Job job;
  job.id = require_string(j, "id", ctx);
  job.gap_class = optional_string(j, "gap_class", job.id, ctx);
  const json& opts = require_array(j, "options", ctx);
  for (std::size_t i = 0; i < opts.size(); ++i) {
    const std::string octx = ctx + ".options[" + std::to_string(i) + "]";
    const json& o = opts[i];
    ProcessingOption opt;
    opt.machine_id = require_string(o, "machine_id", octx);
    opt.mode_id = require_string(o, "mode_id", octx);
    opt.duration_s = require_number(o, "duration_s", octx);
    opt.max_profit = require_number(o, "max_profit", octx);
    job.options.push_back(std::move(opt));
  }
  return job;
}

Order parse_order(const json& j, const std::string& ctx) {
  Order order;
  order.id = require_string(j, "id", ctx);
  order.arrival_time_s = require_number(j, "arrival_time_s", ctx);
  const json& curve = require_key(j, "curve", ctx);
  const std::string cctx = ctx + ".curve";
  order.curve.d_s = require_number(curve, "d_s", cctx);
  order.curve.z_s = require_number(curve, "z_s", cctx);
  order.curve.penalty_rate = optional_number(curve, "penalty_rate", 0.0, cctx);
  const json& jobs = require_array(j, "jobs", ctx);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    order.jobs.push_back(parse_job(jobs[i], ctx + ".jobs[" + std::to_string(i) + "]"));
  }
  if (auto it = j.find("precedence"); it != j.end()) {
    if (!it->is_array()) throw ParseError(ctx + ".precedence: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& edge = (*it)[i];
      const std::string ectx = ctx + ".precedence[" + std::to_string(i) + "]";
      if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string()) {
        throw ParseError(ectx + ": expected a [pred, succ] pair of job ids");
      }
      order.precedence.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
  }
  return order;
}

}  // namespace

Scenario load_scenario(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario parse error: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("scenario: expected a JSON object");

  Scenario s;
  const json& machines = require_array(root, "machines", "scenario");
  for (std::size_t i = 0; i < machines.size(); ++i) {
    const std::string ctx = "machines[" + std::to_string(i) + "]";
    Machine m;
    m.id = require_string(machines[i], "id", ctx);
    m.label = optional_string(machines[i], "label", "", ctx);
    s.machines.push_back(std::move(m));
  }
  if (auto it = root.find("mutex_groups"); it != root.end()) {
    if (!it->is_array()) throw ParseError("mutex_groups: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& g = (*it)[i];
      const std::string ctx = "mutex_groups[" + std::to_string(i) + "]";
      if (!g.is_array()) throw ParseError(ctx + ": expected an array of machine ids");
      MutexGroup group;
      for (const json& id : g) {
        if (!id.is_string()) throw ParseError(ctx + ": expected machine id strings");
        group.machine_ids.push_back(id.get<std::string>());
      }
      s.mutex_groups.push_back(std::move(group));
    }
  }
  if (auto it = root.find("gap_rules"); it != root.end()) {
    if (!it->is_array()) throw ParseError("gap_rules: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string ctx = "gap_rules[" + std::to_string(i) + "]";
      const json& g = (*it)[i];
      GapRule rule;
      rule.machine_id = require_string(g, "machine_id", ctx);
      rule.from_class = require_string(g, "from_class", ctx);
      rule.to_class = require_string(g, "to_class", ctx);
      rule.gap_s = require_number(g, "gap_s", ctx);
      s.gap_rules.push_back(std::move(rule));
    }
  }
  const json& orders = require_array(root, "orders", "scenario");
  for (std::size_t i = 0; i < orders.size(); ++i) {
    s.orders.push_back(parse_order(orders[i], "orders[" + std::to_string(i) + "]"));
  }
  return s;
}

std::string save_scenario(const Scenario& s) {
  json root;
  root["machines"] = json::array();
  for (const Machine& m : s.machines) {
    root["machines"].push_back({{"id", m.id}, {"label", m.label}});
  }
  root["mutex_groups"] = json::array();
  for (const MutexGroup& g : s.mutex_groups) {
    root["mutex_groups"].push_back(g.machine_ids);
  }
  root["gap_rules"] = json::array();
  for (const GapRule& r : s.gap_rules) {
    root["gap_rules"].push_back({{"machine_id", r.machine_id},
                                 {"from_class", r.from_class},
                                 {"to_class", r.to_class},
                                 {"gap_s", r.gap_s}});
  }
  root["orders"] = json::array();
  for (const Order& o : s.orders) {
    json jo;
    jo["id"] = o.id;
    jo["arrival_time_s"] = o.arrival_time_s;
    jo["curve"] = {{"d_s", o.curve.d_s}, {"z_s", o.curve.z_s}, {"penalty_rate", o.curve.penalty_rate}};
    jo["jobs"] = json::array();
    for (const Job& job : o.jobs) {
      json jj;
      jj["id"] = job.id;
      if (job.gap_class != job.id) jj["gap_class"] = job.gap_class;
      jj["options"] = json::array();
      for (const ProcessingOption& opt : job.options) {
        jj["options"].push_back({{"machine_id", opt.machine_id},
                                 {"mode_id", opt.mode_id},
                                 {"duration_s", opt.duration_s},
                                 {"max_profit", opt.max_profit}});
      }
      jo["jobs"].push_back(std::move(jj));
    }
    jo["precedence"] = json::array();
    for (const auto& [pred, succ] : o.precedence) {
      jo["precedence"].push_back({pred, succ});
    }
    root["orders"].push_back(std::move(jo));
  }
  return root.dump(2) + "\n";
}

namespace {

// Kahn's algorithm; true when the precedence graph of the order is acyclic.
bool precedence_acyclic(const Order& order) {
  std::map<std::string, int> indegree;
  std::map<std::string, std::vector<std::string>> succs;
  for (const Job& j : order.jobs) indegree[j.id] = 0;
  for (const auto& [pred, succ] : order.precedence) {
    if (!indegree.count(pred) || !indegree.count(succ)) continue;  // reported separately
    succs[pred].push_back(succ);
    ++indegree[succ];
  }
  std::vector<std::string> stack;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) stack.push_back(id);
  }
  std::size_t visited = 0;
  while (!stack.empty()) {
    std::string id = std::move(stack.back());
    stack.pop_back();
    ++visited;
    for (const std::string& nxt : succs[id]) {
      if (--indegree[nxt] == 0) stack.push_back(nxt);
    }
  }
  return visited == indegree.size();
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport report;
  auto violation = [&report](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::unordered_set<std::string> machine_ids;
  for (const Machine& m : s.machines) {
    if (!machine_ids.insert(m.id).second) {
      violation("machine '" + m.id + "': duplicate machine id");
    }
  }

  for (std::size_t i = 0; i < s.mutex_groups.size(); ++i) {
    const MutexGroup& g = s.mutex_groups[i];
    const std::string where = "mutex_groups[" + std::to_string(i) + "]";
    if (g.machine_ids.size() < 2) violation(where + ": needs at least 2 machines");
    std::unordered_set<std::string> seen;
    for (const std::string& id : g.machine_ids) {
      if (!machine_ids.count(id)) violation(where + ": unknown machine '" + id + "'");
      if (!seen.insert(id).second) violation(where + ": machine '" + id + "' listed twice");
    }
  }

  for (std::size_t i = 0; i < s.gap_rules.size(); ++i) {
    const GapRule& r = s.gap_rules[i];
    const std::string where = "gap_rules[" + std::to_string(i) + "]";
    if (!machine_ids.count(r.machine_id)) violation(where + ": unknown machine '" + r.machine_id + "'");
    if (r.gap_s < 0) violation(where + ": gap_s must be non-negative");
  }

  std::unordered_set<std::string> order_ids;
  std::unordered_set<std::string> job_ids;
  for (const Order& order : s.orders) {
    const std::string octx = "order '" + order.id + "'";
    if (!order_ids.insert(order.id).second) violation(octx + ": duplicate order id");
    if (order.arrival_time_s < 0) violation(octx + ": arrival_time_s must be non-negative");
    if (order.curve.d_s < order.arrival_time_s) {
      violation(octx + ": curve d_s precedes the arrival time");
    }
    if (!(order.curve.d_s < order.curve.z_s)) {
      violation(octx + ": curve requires d_s < z_s");
    }
    if (order.curve.penalty_rate < 0) violation(octx + ": penalty_rate must be non-negative");
    if (order.jobs.empty()) violation(octx + ": needs at least one job");

    std::unordered_set<std::string> local_jobs;
    for (const Job& job : order.jobs) {
      const std::string jctx = octx + " job '" + job.id + "'";
      if (!job_ids.insert(job.id).second) violation(jctx + ": duplicate job id");
      local_jobs.insert(job.id);
      if (job.options.empty()) violation(jctx + ": needs at least one processing option");
      std::set<std::pair<std::string, std::string>> opt_keys;
      for (const ProcessingOption& opt : job.options) {
        if (!machine_ids.count(opt.machine_id)) {
          violation(jctx + " option (" + opt.machine_id + ", " + opt.mode_id +
                    "): unknown machine '" + opt.machine_id + "'");
        }
        if (opt.duration_s <= 0) {
          violation(jctx + " option (" + opt.machine_id + ", " + opt.mode_id +
                    "): duration_s must be positive");
        }
        if (!opt_keys.insert({opt.machine_id, opt.mode_id}).second) {
          violation(jctx + ": duplicate option (" + opt.machine_id + ", " + opt.mode_id + ")");
        }
      }
    }
    for (const auto& [pred, succ] : order.precedence) {
      if (!local_jobs.count(pred)) {
        violation(octx + ": precedence references '" + pred + "' outside this order");
      }
      if (!local_jobs.count(succ)) {
        violation(octx + ": precedence references '" + succ + "' outside this order");
      }
    }
    if (!precedence_acyclic(order)) violation(octx + ": precedence contains a cycle");
  }

  return report;
}

}  // namespace valuesched
