#include "valuesched/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "valuesched/encoding.hpp"
#include "valuesched/harness.hpp"
#include "valuesched/moead.hpp"
#include "valuesched/model.hpp"
#include "valuesched/util.hpp"

namespace valuesched {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

// The default neighborhood suits the default population; small --pop
// values shrink it rather than erroring out.
MoeadConfig engine_config(int population, int generations, std::uint64_t seed, int threads) {
  MoeadConfig cfg;
  cfg.population = population;
  cfg.generations = generations;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.neighborhood_t = std::min(cfg.neighborhood_t, population);
  return cfg;
}

Scenario load_validated(const std::string& path) {
  const Scenario scenario = load_scenario(read_file(path));
  const ValidationReport report = validate_scenario(scenario);
  if (!report.ok()) {
    std::cerr << path << ": invalid scenario\n";
    for (const std::string& v : report.violations) std::cerr << "  - " << v << "\n";
    throw ParseError("scenario failed validation");
  }
  return scenario;
}

std::vector<std::pair<double, double>> parse_dz_list(const std::string& text) {
  std::vector<std::pair<double, double>> pairs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    const std::size_t first = line.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    if (!std::isdigit(static_cast<unsigned char>(line[first]))) continue;  // header/comment
    double d = 0, z = 0;
    if (std::sscanf(line.c_str(), "%lf %lf", &d, &z) != 2 || !(d < z)) {
      throw ParseError("dz list line " + std::to_string(line_no) + ": expected \"D,Z\" with D < Z");
    }
    pairs.emplace_back(d, z);
  }
  if (pairs.empty()) throw ParseError("dz list: no pairs found");
  return pairs;
}

struct OptimizeArgs {
  std::string scenario_path;
  std::string variant = "standard";
  int population = 300;
  int generations = 500;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_prefix;
};

int cmd_optimize(const OptimizeArgs& args) {
  const Scenario scenario = load_validated(args.scenario_path);
  const ScenarioIndex index(scenario);
  const MoeadConfig cfg = engine_config(args.population, args.generations, args.seed, args.threads);
  const Variant variant = *parse_variant(args.variant);

  const ParetoArchive archive = run(index, cfg, variant);
  // The archive keeps profit strictly ascending, so the representative
  // (max profit, ties by min makespan) is the last entry.
  const ArchiveEntry& best = archive.entries().back();
  const Schedule schedule = build_schedule(index, decode(best.genome, index));

  write_file(args.out_prefix + ".archive.csv", archive_to_csv(archive));
  write_file(args.out_prefix + ".schedule.json", schedule_to_json(schedule));
  return kExitOk;
}

struct GenerateArgs {
  std::vector<int> sizes = {7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  int per_size = 10;
  std::uint64_t seed = 1;
  std::string out_dir;
};

int cmd_generate(const GenerateArgs& args) {
  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + args.out_dir + ": " + ec.message());
  GeneratorSpec spec;
  spec.element_counts = args.sizes;
  spec.scenarios_per_count = args.per_size;
  spec.seed = args.seed;
  for (int size : args.sizes) {
    for (int k = 1; k <= args.per_size; ++k) {
      Rng rng = Rng::stream(args.seed, static_cast<std::uint64_t>(size),
                            static_cast<std::uint64_t>(k));
      const Scenario scenario = generate_scenario(spec, size, rng);
      const std::string name =
          "scenario_" + std::to_string(size) + "_" + std::to_string(k) + ".json";
      write_file((std::filesystem::path(args.out_dir) / name).string(),
                 save_scenario(scenario));
    }
  }
  return kExitOk;
}

struct SweepArgs {
  std::string scenario_path;
  std::string dz_list_path;
  int population = 300;
  int generations = 500;
  std::uint64_t seed = 1;
  int seeds_per_cell = 1;
  int threads = 0;
  std::string out_path;
};

int cmd_sweep(const SweepArgs& args) {
  const Scenario base = load_validated(args.scenario_path);
  SweepSpec spec;
  if (!args.dz_list_path.empty()) {
    spec.dz_pairs = parse_dz_list(read_file(args.dz_list_path));
  }
  spec.optimizer = engine_config(args.population, args.generations, args.seed, args.threads);
  spec.seeds_per_cell = args.seeds_per_cell;
  const SweepReport report = run_sweep(spec, base);
  write_file(args.out_path, sweep_to_csv(report));
  return kExitOk;
}

struct EvaluateArgs {
  std::string scenario_path;
  std::string genome;
  std::string variant;  // optional cross-check against the genome tag
};

int cmd_evaluate(const EvaluateArgs& args) {
  const Scenario scenario = load_validated(args.scenario_path);
  const ScenarioIndex index(scenario);
  const std::optional<Chromosome> genome = parse_genome(args.genome, index);
  if (!genome) {
    std::cerr << "malformed genome for this scenario\n";
    return kExitValidation;
  }
  if (!args.variant.empty() && args.variant != variant_name(genome->variant)) {
    std::cerr << "genome is tagged '" << variant_name(genome->variant)
              << "' but --variant says '" << args.variant << "'\n";
    return kExitValidation;
  }
  const Schedule schedule = build_schedule(index, decode(*genome, index));
  std::cout << schedule_to_json(schedule);
  return kExitOk;
}

struct TrendArgs {
  std::vector<int> sizes = {7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  int per_size = 10;
  int population = 300;
  int generations = 500;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_path;
};

int cmd_trend(const TrendArgs& args) {
  GeneratorSpec spec;
  spec.element_counts = args.sizes;
  spec.scenarios_per_count = args.per_size;
  spec.seed = args.seed;
  const MoeadConfig cfg = engine_config(args.population, args.generations, 0, args.threads);
  const TrendReport report = trend_study(spec, cfg);
  write_file(args.out_path, trend_to_csv(report));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Multi-objective planner and scheduler for orders whose value decays over time"};
  app.require_subcommand(1);

  OptimizeArgs optimize;
  CLI::App* opt = app.add_subcommand("optimize", "Search a scenario and export the Pareto archive");
  opt->add_option("--scenario", optimize.scenario_path, "Scenario JSON file")->required();
  opt->add_option("--variant", optimize.variant, "Optimizer variant")
      ->check(CLI::IsMember({"standard", "selection"}));
  opt->add_option("--pop", optimize.population, "Population size");
  opt->add_option("--gens", optimize.generations, "Number of generations");
  opt->add_option("--seed", optimize.seed, "Master seed");
  opt->add_option("--threads", optimize.threads, "Evaluation threads (0 = all cores)");
  opt->add_option("--out", optimize.out_prefix,
                  "Output prefix; writes <out>.archive.csv and <out>.schedule.json")
      ->required();

  GenerateArgs generate;
  CLI::App* gen = app.add_subcommand("generate", "Write synthetic scenario files");
  gen->add_option("--sizes", generate.sizes, "Element counts")->delimiter(',');
  gen->add_option("--per-size", generate.per_size, "Scenarios per size");
  gen->add_option("--seed", generate.seed, "Master seed");
  gen->add_option("--out", generate.out_dir, "Output directory")->required();

  SweepArgs sweep;
  CLI::App* swp = app.add_subcommand("sweep", "Compare variants across value-curve shapes");
  swp->add_option("--scenario", sweep.scenario_path, "Scenario JSON file")->required();
  swp->add_option("--dz-list", sweep.dz_list_path,
                  "File of D,Z pairs (one per line); omit for the built-in list");
  swp->add_option("--pop", sweep.population, "Population size");
  swp->add_option("--gens", sweep.generations, "Number of generations");
  swp->add_option("--seed", sweep.seed, "Master seed");
  swp->add_option("--seeds-per-cell", sweep.seeds_per_cell, "Runs merged per cell");
  swp->add_option("--threads", sweep.threads, "Evaluation threads (0 = all cores)");
  swp->add_option("--out", sweep.out_path, "Report CSV path")->required();

  EvaluateArgs evaluate;
  CLI::App* evl = app.add_subcommand("evaluate", "Schedule one genome and print the JSON");
  evl->add_option("--scenario", evaluate.scenario_path, "Scenario JSON file")->required();
  evl->add_option("--genome", evaluate.genome, "Genome string (as found in archive CSVs)")
      ->required();
  evl->add_option("--variant", evaluate.variant, "Expected variant tag")
      ->check(CLI::IsMember({"standard", "selection"}));

  TrendArgs trend;
  CLI::App* trd = app.add_subcommand("trend", "Order-size trend study over generated scenarios");
  trd->add_option("--sizes", trend.sizes, "Element counts")->delimiter(',');
  trd->add_option("--per-size", trend.per_size, "Scenarios per size");
  trd->add_option("--pop", trend.population, "Population size");
  trd->add_option("--gens", trend.generations, "Number of generations");
  trd->add_option("--seed", trend.seed, "Master seed");
  trd->add_option("--threads", trend.threads, "Evaluation threads (0 = all cores)");
  trd->add_option("--out", trend.out_path, "Report CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*opt) return cmd_optimize(optimize);
    if (*gen) return cmd_generate(generate);
    if (*swp) return cmd_sweep(sweep);
    if (*evl) return cmd_evaluate(evaluate);
    if (*trd) return cmd_trend(trend);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace valuesched
