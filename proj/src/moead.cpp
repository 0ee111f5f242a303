#include "valuesched/moead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "valuesched/util.hpp"

namespace valuesched {

std::vector<std::array<double, 2>> init_weights(int population) {
  if (population < 2) {
    throw std::invalid_argument("init_weights: population must be at least 2");
  }
  std::vector<std::array<double, 2>> weights;
  weights.reserve(static_cast<std::size_t>(population));
  const double denom = static_cast<double>(population - 1);
  for (int i = 0; i < population; ++i) {
    const double w = static_cast<double>(i) / denom;
    weights.push_back({w, 1.0 - w});
  }
  return weights;
}

std::vector<std::vector<int>> build_neighborhoods(
    const std::vector<std::array<double, 2>>& weights, int t) {
  const int n = static_cast<int>(weights.size());
  if (t < 2 || t > n) {
    throw std::invalid_argument("build_neighborhoods: need 2 <= t <= population");
  }
  std::vector<std::vector<int>> neighborhoods(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> by_distance(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double dx = weights[static_cast<std::size_t>(i)][0] -
                        weights[static_cast<std::size_t>(j)][0];
      const double dy = weights[static_cast<std::size_t>(i)][1] -
                        weights[static_cast<std::size_t>(j)][1];
      by_distance[static_cast<std::size_t>(j)] = {dx * dx + dy * dy, j};
    }
    std::sort(by_distance.begin(), by_distance.end());
    auto& nb = neighborhoods[static_cast<std::size_t>(i)];
    nb.reserve(static_cast<std::size_t>(t));
    for (int k = 0; k < t; ++k) nb.push_back(by_distance[static_cast<std::size_t>(k)].second);
  }
  return neighborhoods;
}

double tchebycheff(const std::array<double, 2>& f, const std::array<double, 2>& w,
                   const std::array<double, 2>& z) {
  return std::max(w[0] * std::abs(f[0] - z[0]), w[1] * std::abs(f[1] - z[1]));
}

bool ParetoArchive::insert(const ObjectiveVector& objectives, int elements_produced,
                           const Chromosome& genome) {
  auto pos = std::lower_bound(
      entries_.begin(), entries_.end(), objectives.makespan_s,
      [](const ArchiveEntry& e, double mk) { return e.objectives.makespan_s < mk; });
  if (pos != entries_.begin()) {
    // Predecessor has strictly lower makespan; it dominates the candidate
    // unless the candidate brings strictly more profit.
    if (std::prev(pos)->objectives.total_profit >= objectives.total_profit) return false;
  }
  if (pos != entries_.end() && pos->objectives.makespan_s == objectives.makespan_s &&
      pos->objectives.total_profit >= objectives.total_profit) {
    return false;
  }
  // Entries from pos on have makespan >= the candidate's; those that do
  // not beat its profit are dominated (or duplicate) and fall out.
  auto last = pos;
  while (last != entries_.end() && last->objectives.total_profit <= objectives.total_profit) {
    ++last;
  }
  if (pos == last) {
    entries_.insert(pos, ArchiveEntry{objectives, elements_produced, genome});
  } else {
    *pos = ArchiveEntry{objectives, elements_produced, genome};
    entries_.erase(pos + 1, last);
  }
  return true;
}

namespace {

int resolve_threads(int requested, int work_items) {
  int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return std::min(t, std::max(work_items, 1));
}

void validate_config(const MoeadConfig& cfg) {
  if (cfg.population < 2) throw std::invalid_argument("MoeadConfig: population must be >= 2");
  if (cfg.generations < 1) throw std::invalid_argument("MoeadConfig: generations must be >= 1");
  if (cfg.neighborhood_t < 2 || cfg.neighborhood_t > cfg.population) {
    throw std::invalid_argument("MoeadConfig: need 2 <= neighborhood_t <= population");
  }
  if (cfg.replacement_limit < 1) {
    throw std::invalid_argument("MoeadConfig: replacement_limit must be >= 1");
  }
  if (cfg.crossover_rate < 0 || cfg.crossover_rate > 1) {
    throw std::invalid_argument("MoeadConfig: crossover_rate must be in [0, 1]");
  }
  if (cfg.mutation_rate && (*cfg.mutation_rate < 0 || *cfg.mutation_rate > 1)) {
    throw std::invalid_argument("MoeadConfig: mutation_rate must be in [0, 1]");
  }
}

struct Normalizer {
  std::array<double, 2> ideal{0, 0};
  std::array<double, 2> nadir{0, 0};
  bool seeded = false;

  void absorb(const std::array<double, 2>& f) {
    if (!seeded) {
      ideal = nadir = f;
      seeded = true;
      return;
    }
    for (int k = 0; k < 2; ++k) {
      ideal[static_cast<std::size_t>(k)] =
          std::min(ideal[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)]);
      nadir[static_cast<std::size_t>(k)] =
          std::max(nadir[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)]);
    }
  }

  // Min-max scaling by the running ideal/nadir; a flat dimension maps to 0.
  std::array<double, 2> scale(const std::array<double, 2>& f) const {
    std::array<double, 2> out{};
    for (std::size_t k = 0; k < 2; ++k) {
      const double range = nadir[k] - ideal[k];
      out[k] = range > 0 ? (f[k] - ideal[k]) / range : 0.0;
    }
    return out;
  }
};

}  // namespace

ParetoArchive run(const ScenarioIndex& index, const MoeadConfig& cfg, Variant variant,
                  RunTrace* trace) {
  validate_config(cfg);
  const int pop = cfg.population;
  const auto weights = init_weights(pop);
  const auto neighborhoods = build_neighborhoods(weights, cfg.neighborhood_t);

  const std::size_t gene_count =
      2 * static_cast<std::size_t>(index.job_count()) +
      (variant == Variant::selection ? static_cast<std::size_t>(index.order_count()) : 0);
  const double mutation_rate =
      cfg.mutation_rate ? *cfg.mutation_rate : 1.0 / static_cast<double>(std::max<std::size_t>(gene_count, 1));

  const int threads = resolve_threads(cfg.threads, pop);
  std::vector<Evaluator> evaluators;
  std::vector<DecodedGenome> decode_buffers(static_cast<std::size_t>(threads));
  evaluators.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) evaluators.emplace_back(index);

  std::vector<Chromosome> incumbents(static_cast<std::size_t>(pop));
  std::vector<EvalResult> incumbent_eval(static_cast<std::size_t>(pop));
  std::vector<Chromosome> children(static_cast<std::size_t>(pop));
  std::vector<EvalResult> child_eval(static_cast<std::size_t>(pop));

  auto evaluate_range = [&](std::vector<Chromosome>& genomes, std::vector<EvalResult>& results) {
    auto worker = [&](int begin, int end, int slot) {
      Evaluator& ev = evaluators[static_cast<std::size_t>(slot)];
      DecodedGenome& buf = decode_buffers[static_cast<std::size_t>(slot)];
      for (int i = begin; i < end; ++i) {
        decode_into(genomes[static_cast<std::size_t>(i)], index, buf);
        results[static_cast<std::size_t>(i)] = ev.run(buf);
      }
    };
    if (threads == 1) {
      worker(0, pop, 0);
      return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const int chunk = (pop + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(pop, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end, w);
    }
    for (auto& th : pool) th.join();
  };

  for (int i = 0; i < pop; ++i) {
    Rng rng = Rng::stream(cfg.seed, 0, static_cast<std::uint64_t>(i));
    incumbents[static_cast<std::size_t>(i)] = random_chromosome(index, variant, rng);
  }
  evaluate_range(incumbents, incumbent_eval);

  ParetoArchive archive;
  Normalizer norm;
  for (int i = 0; i < pop; ++i) {
    const EvalResult& r = incumbent_eval[static_cast<std::size_t>(i)];
    norm.absorb(r.objectives.minimized());
    archive.insert(r.objectives, r.elements_produced, incumbents[static_cast<std::size_t>(i)]);
  }
  if (trace) trace->ideal_after_generation.push_back(norm.ideal);

  for (int gen = 1; gen <= cfg.generations; ++gen) {
    // Breed every child from the incumbents the generation started with,
    // each from its own named stream; evaluation can then fan out to
    // worker threads without touching the outcome.
    for (int i = 0; i < pop; ++i) {
      Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(gen),
                            static_cast<std::uint64_t>(i));
      const auto& nb = neighborhoods[static_cast<std::size_t>(i)];
      const auto t = static_cast<std::uint64_t>(nb.size());
      const std::size_t a_pos = static_cast<std::size_t>(rng.next_below(t));
      std::size_t b_pos = static_cast<std::size_t>(rng.next_below(t - 1));
      if (b_pos >= a_pos) ++b_pos;
      const Chromosome& pa = incumbents[static_cast<std::size_t>(nb[a_pos])];
      const Chromosome& pb = incumbents[static_cast<std::size_t>(nb[b_pos])];
      Chromosome child = rng.next_bool(cfg.crossover_rate) ? crossover(pa, pb, rng) : pa;
      mutate_in_place(child, mutation_rate, index, rng);
      children[static_cast<std::size_t>(i)] = std::move(child);
    }
    evaluate_range(children, child_eval);

    // Merge in subproblem index order: ideal update, then bounded
    // neighbor replacement, then the archive.
    for (int i = 0; i < pop; ++i) {
      const EvalResult& r = child_eval[static_cast<std::size_t>(i)];
      norm.absorb(r.objectives.minimized());
      const std::array<double, 2> child_scaled = norm.scale(r.objectives.minimized());
      int replaced = 0;
      for (int j : neighborhoods[static_cast<std::size_t>(i)]) {
        if (replaced >= cfg.replacement_limit) break;
        const auto& wj = weights[static_cast<std::size_t>(j)];
        const double g_child = tchebycheff(child_scaled, wj, {0, 0});
        const double g_incumbent = tchebycheff(
            norm.scale(incumbent_eval[static_cast<std::size_t>(j)].objectives.minimized()), wj,
            {0, 0});
        if (g_child < g_incumbent) {
          incumbents[static_cast<std::size_t>(j)] = children[static_cast<std::size_t>(i)];
          incumbent_eval[static_cast<std::size_t>(j)] = r;
          ++replaced;
        }
      }
      archive.insert(r.objectives, r.elements_produced, children[static_cast<std::size_t>(i)]);
    }
    if (trace) trace->ideal_after_generation.push_back(norm.ideal);
  }
  return archive;
}

ParetoArchive run(const Scenario& scenario, const MoeadConfig& cfg, Variant variant,
                  RunTrace* trace) {
  const ScenarioIndex index(scenario);
  return run(index, cfg, variant, trace);
}

std::string archive_to_csv(const ParetoArchive& archive) {
  std::string out = "makespan_s,profit,elements_produced,genome\n";
  for (const ArchiveEntry& e : archive.entries()) {
    out += fmt_double(e.objectives.makespan_s);
    out += ',';
    out += fmt_double(e.objectives.total_profit);
    out += ',';
    out += std::to_string(e.elements_produced);
    out += ",\"";
    out += format_genome(e.genome);
    out += "\"\n";
  }
  return out;
}

}  // namespace valuesched
