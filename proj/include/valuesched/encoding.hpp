#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valuesched/rng.hpp"
#include "valuesched/scheduler.hpp"

namespace valuesched {

enum class Variant { standard, selection };

const char* variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

// Value-encoded chromosome: one allocation gene (machine + mode as an
// option index) and one priority gene per job, plus one inclusion gene
// per order in the selection variant. Gene positions follow the global
// job/order order of ScenarioIndex.
struct Chromosome {
  Variant variant = Variant::standard;
  std::vector<std::int32_t> alloc;   // per job, in [0, |options|)
  std::vector<double> prio;          // per job, in [0, 1)
  std::vector<std::uint8_t> incl;    // per order; empty in the standard variant

  std::size_t gene_count() const { return alloc.size() + prio.size() + incl.size(); }
  bool operator==(const Chromosome&) const = default;
};

Chromosome random_chromosome(const ScenarioIndex& index, Variant variant, Rng& rng);

// Uniform crossover. Consumes one draw per gene position, alloc genes
// first, then priorities, then inclusion genes; an alloc gene moves as a
// whole, so a child never mixes one parent's machine with the other's mode.
Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng);

// Resamples each gene from its full domain with probability `rate`, in
// the same gene order crossover uses. Inclusion genes flip instead.
Chromosome mutate(const Chromosome& c, double rate, const ScenarioIndex& index, Rng& rng);
void mutate_in_place(Chromosome& c, double rate, const ScenarioIndex& index, Rng& rng);

DecodedGenome decode(const Chromosome& c, const ScenarioIndex& index);
void decode_into(const Chromosome& c, const ScenarioIndex& index, DecodedGenome& out);

// String form used in result files: the variant tag, then all genes
// comma-separated — alloc genes as integers, priorities as decimals,
// inclusion genes as 0/1.
std::string format_genome(const Chromosome& c);
// Returns std::nullopt when the string is malformed or does not fit the
// scenario's shape.
std::optional<Chromosome> parse_genome(std::string_view text, const ScenarioIndex& index);

}  // namespace valuesched
