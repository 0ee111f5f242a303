#include "valuesched/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "valuesched/util.hpp"

namespace valuesched {

namespace {

std::string element_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "E%02d", index + 1);
  return buf;
}

}  // namespace

Scenario generate_scenario(const GeneratorSpec& spec, int size, Rng& rng) {
  if (size < 1) throw std::invalid_argument("generate_scenario: size must be >= 1");
  if (spec.machines < 1 || spec.modes_per_machine < 1) {
    throw std::invalid_argument("generate_scenario: machines and modes must be >= 1");
  }
  if (!(spec.duration_min_s > 0 && spec.duration_min_s < spec.duration_max_s)) {
    throw std::invalid_argument("generate_scenario: duration range must be positive and ordered");
  }

  Scenario s;
  const int k = spec.machines;
  for (int j = 0; j < k; ++j) {
    s.machines.push_back({"M" + std::to_string(j + 1), "Machine " + std::to_string(j + 1)});
  }
  if (spec.with_mutex_group && k >= 2) {
    s.mutex_groups.push_back({{s.machines[0].id, s.machines[1].id}});
  }
  if (spec.with_gap_rules) {
    const std::string& m = s.machines.back().id;
    s.gap_rules.push_back({m, "even-lot", "odd-lot", 120});
    s.gap_rules.push_back({m, "odd-lot", "even-lot", 120});
  }

  const double band_width = (spec.duration_max_s - spec.duration_min_s) / k;
  const int q = spec.modes_per_machine;

  for (int e = 0; e < size; ++e) {
    Order order;
    order.id = element_id(e);
    order.arrival_time_s = 0;
    order.curve = {spec.d_s, spec.z_s, 0};

    Job job;
    job.id = order.id + "J1";
    job.gap_class = spec.with_gap_rules ? (e % 2 == 0 ? "even-lot" : "odd-lot") : job.id;
    if (job.gap_class.empty()) job.gap_class = job.id;

    const double elem_scale =
        spec.element_scale_min +
        rng.next_double() * (spec.element_scale_max - spec.element_scale_min);

    for (int j = 0; j < k; ++j) {
      // Machine j+1 serves the (k-1-j)-th band from the top: the last
      // machine is the fastest and carries the highest prices.
      const double band_lo = spec.duration_min_s + (k - 1 - j) * band_width;
      std::vector<double> durations(static_cast<std::size_t>(q));
      for (double& d : durations) d = band_lo + rng.next_double() * band_width;
      std::sort(durations.begin(), durations.end());

      const double base = spec.base_profit * std::pow(spec.tier_multiplier, j) * elem_scale;
      for (int mode = 0; mode < q; ++mode) {
        // (mode + jitter) is strictly increasing in mode, so longer
        // durations always price higher within one machine.
        const double lift =
            spec.within_machine_slope * (mode + rng.next_double()) / q;
        ProcessingOption opt;
        opt.machine_id = s.machines[static_cast<std::size_t>(j)].id;
        opt.mode_id = "Mode " + std::to_string(mode + 1);
        opt.duration_s = durations[static_cast<std::size_t>(mode)];
        opt.max_profit = base * (1.0 + lift);
        job.options.push_back(std::move(opt));
      }
    }
    order.jobs.push_back(std::move(job));
    s.orders.push_back(std::move(order));
  }
  return s;
}

namespace {

struct CatalogueRow {
  const char* machine;
  const char* mode;
  double duration_s;
  double max_profit;
};

// One element's full machine/mode price list (three machines, four modes
// each; the third machine is the fastest and the dearest).
constexpr CatalogueRow kCatalogue[] = {
    {"M1", "Mode 1", 2833.5, 167.0}, {"M1", "Mode 2", 2956.2, 168.4},
    {"M1", "Mode 3", 3042.1, 175.9}, {"M1", "Mode 4", 3174.1, 192.1},
    {"M2", "Mode 1", 2033.5, 230.0}, {"M2", "Mode 2", 2156.2, 237.1},
    {"M2", "Mode 3", 2242.1, 238.6}, {"M2", "Mode 4", 2674.1, 273.1},
    {"M3", "Mode 1", 1256.2, 481.6}, {"M3", "Mode 2", 1633.5, 462.1},
    {"M3", "Mode 3", 1842.1, 519.3}, {"M3", "Mode 4", 1974.1, 596.9},
};

// Assorted (duration, price) factors for elements E02..E14. Chosen so
// the book comfortably oversubscribes three machines against the default
// D=30000/Z=40000 curve: producing everything takes well past Z while
// value density still varies enough that dropping the worst elements is
// the profitable move.
constexpr std::pair<double, double> kElementScales[] = {
    {3.0, 2.7}, {3.8, 4.2}, {4.5, 3.9}, {5.2, 5.9}, {5.8, 5.1}, {6.4, 7.1}, {7.0, 6.2},
    {7.6, 8.7}, {8.2, 7.4}, {8.8, 10.0}, {9.4, 8.5}, {10.0, 11.6}, {10.6, 9.4},
};

}  // namespace

Scenario reference_scenario() {
  Scenario s;
  s.machines = {{"M1", "Machine 1"}, {"M2", "Machine 2"}, {"M3", "Machine 3"}};
  for (int e = 0; e < 14; ++e) {
    const double duration_scale = e == 0 ? 1.0 : kElementScales[e - 1].first;
    const double profit_scale = e == 0 ? 1.0 : kElementScales[e - 1].second;
    Order order;
    order.id = element_id(e);
    order.arrival_time_s = 0;
    order.curve = {30000, 40000, 0};
    Job job;
    job.id = order.id + "J1";
    job.gap_class = job.id;
    for (const CatalogueRow& row : kCatalogue) {
      job.options.push_back({row.machine, row.mode, row.duration_s * duration_scale,
                             row.max_profit * profit_scale});
    }
    order.jobs.push_back(std::move(job));
    s.orders.push_back(std::move(order));
  }
  return s;
}

std::vector<std::pair<double, double>> default_dz_pairs() {
  return {{5000, 10000},  {5000, 15000},  {10000, 15000}, {10000, 20000}, {15000, 20000},
          {15000, 25000}, {20000, 25000}, {20000, 30000}, {25000, 30000}, {25000, 35000},
          {30000, 35000}, {30000, 40000}, {35000, 40000}, {35000, 45000}};
}

RepresentativePoint representative_point(const std::vector<ArchiveEntry>& entries) {
  if (entries.empty()) {
    throw std::invalid_argument("representative_point: empty archive");
  }
  const ArchiveEntry* best = &entries.front();
  for (const ArchiveEntry& e : entries) {
    if (e.objectives.total_profit > best->objectives.total_profit) {
      best = &e;
    } else if (e.objectives.total_profit == best->objectives.total_profit) {
      if (e.objectives.makespan_s < best->objectives.makespan_s ||
          (e.objectives.makespan_s == best->objectives.makespan_s &&
           e.elements_produced < best->elements_produced)) {
        best = &e;
      }
    }
  }
  return {best->objectives.total_profit, best->objectives.makespan_s, best->elements_produced};
}

RepresentativePoint representative_point(const ParetoArchive& archive) {
  return representative_point(archive.entries());
}

SweepReport run_sweep(const SweepSpec& spec, const Scenario& base) {
  if (spec.seeds_per_cell < 1) {
    throw std::invalid_argument("run_sweep: seeds_per_cell must be >= 1");
  }
  for (const auto& [d, z] : spec.dz_pairs) {
    if (!(d < z)) throw std::invalid_argument("run_sweep: every pair needs D < Z");
  }

  SweepReport report;
  for (std::size_t cell = 0; cell < spec.dz_pairs.size(); ++cell) {
    const auto [d, z] = spec.dz_pairs[cell];
    Scenario scenario = base;
    for (Order& order : scenario.orders) {
      order.curve.d_s = d;
      order.curve.z_s = z;
    }
    const ScenarioIndex index(scenario);
    for (Variant variant : {Variant::standard, Variant::selection}) {
      const auto variant_tag = static_cast<std::uint64_t>(variant == Variant::selection);
      ParetoArchive merged;
      for (int rep = 0; rep < spec.seeds_per_cell; ++rep) {
        MoeadConfig cfg = spec.optimizer;
        cfg.seed = Rng::stream(spec.optimizer.seed, cell,
                               variant_tag * 1000 + static_cast<std::uint64_t>(rep))
                       .next_u64();
        const ParetoArchive archive = run(index, cfg, variant);
        for (const ArchiveEntry& e : archive.entries()) {
          merged.insert(e.objectives, e.elements_produced, e.genome);
        }
      }
      const RepresentativePoint point = representative_point(merged);
      report.rows.push_back(
          {d, z, variant, point.profit, point.makespan_s, point.elements_produced});
    }
  }
  return report;
}

std::string sweep_to_csv(const SweepReport& report) {
  std::string out = "d_s,z_s,variant,profit,makespan_s,elements_produced\n";
  for (const SweepRow& row : report.rows) {
    out += fmt_double(row.d_s);
    out += ',';
    out += fmt_double(row.z_s);
    out += ',';
    out += variant_name(row.variant);
    out += ',';
    out += fmt_double(row.profit);
    out += ',';
    out += fmt_double(row.makespan_s);
    out += ',';
    out += std::to_string(row.elements_produced);
    out += '\n';
  }
  return out;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n != ys.size()) throw std::invalid_argument("spearman: length mismatch");
  if (n < 2) return 0;

  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) {
      return v[a] < v[b];
    });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
      i = j + 1;
    }
    return rank;
  };

  const std::vector<double> rx = ranks(xs);
  const std::vector<double> ry = ranks(ys);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double cov = 0, var_x = 0, var_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0 || var_y == 0) return 0;
  return cov / std::sqrt(var_x * var_y);
}

TrendReport trend_study(const GeneratorSpec& spec, const MoeadConfig& optimizer) {
  if (spec.element_counts.empty()) {
    throw std::invalid_argument("trend_study: element_counts must be non-empty");
  }
  if (spec.scenarios_per_count < 1) {
    throw std::invalid_argument("trend_study: scenarios_per_count must be >= 1");
  }

  TrendReport report;
  struct Bucket {
    double makespan_sum = 0;
    double profit_sum = 0;
  };
  std::vector<std::array<Bucket, 2>> buckets(spec.element_counts.size());
  std::array<std::vector<double>, 2> sizes_by_variant;
  std::array<std::vector<double>, 2> makespans_by_variant;

  for (std::size_t si = 0; si < spec.element_counts.size(); ++si) {
    const int size = spec.element_counts[si];
    for (int k = 0; k < spec.scenarios_per_count; ++k) {
      const std::uint64_t cell =
          si * static_cast<std::uint64_t>(spec.scenarios_per_count) +
          static_cast<std::uint64_t>(k);
      Rng scenario_rng = Rng::stream(spec.seed, cell, 0);
      const Scenario scenario = generate_scenario(spec, size, scenario_rng);
      const ScenarioIndex index(scenario);
      for (Variant variant : {Variant::standard, Variant::selection}) {
        const std::size_t vi = variant == Variant::selection ? 1 : 0;
        MoeadConfig cfg = optimizer;
        cfg.seed = Rng::stream(spec.seed, cell, 1 + vi).next_u64();
        const RepresentativePoint point = representative_point(run(index, cfg, variant));
        buckets[si][vi].makespan_sum += point.makespan_s;
        buckets[si][vi].profit_sum += point.profit;
        sizes_by_variant[vi].push_back(static_cast<double>(size));
        makespans_by_variant[vi].push_back(point.makespan_s);
        report.runs.emplace_back(size, variant, point);
      }
    }
  }

  const std::array<double, 2> rho = {
      spearman(sizes_by_variant[0], makespans_by_variant[0]),
      spearman(sizes_by_variant[1], makespans_by_variant[1]),
  };
  const double runs_per_bucket = static_cast<double>(spec.scenarios_per_count);
  for (std::size_t si = 0; si < spec.element_counts.size(); ++si) {
    for (Variant variant : {Variant::standard, Variant::selection}) {
      const std::size_t vi = variant == Variant::selection ? 1 : 0;
      report.rows.push_back({spec.element_counts[si], variant,
                             buckets[si][vi].makespan_sum / runs_per_bucket,
                             buckets[si][vi].profit_sum / runs_per_bucket, rho[vi]});
    }
  }
  return report;
}

std::string trend_to_csv(const TrendReport& report) {
  std::string out = "size,variant,mean_makespan_s,mean_profit,spearman_makespan\n";
  for (const TrendRow& row : report.rows) {
    out += std::to_string(row.size);
    out += ',';
    out += variant_name(row.variant);
    out += ',';
    out += fmt_double(row.mean_makespan_s);
    out += ',';
    out += fmt_double(row.mean_profit);
    out += ',';
    out += fmt_double(row.spearman_makespan);
    out += '\n';
  }
  return out;
}

}  // namespace valuesched
