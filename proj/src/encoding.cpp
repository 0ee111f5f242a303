#include "valuesched/encoding.hpp"

#include <charconv>

#include "valuesched/util.hpp"

namespace valuesched {

const char* variant_name(Variant v) {
  return v == Variant::standard ? "standard" : "selection";
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "standard") return Variant::standard;
  if (name == "selection") return Variant::selection;
  return std::nullopt;
}

Chromosome random_chromosome(const ScenarioIndex& index, Variant variant, Rng& rng) {
  Chromosome c;
  c.variant = variant;
  const int n = index.job_count();
  c.alloc.reserve(static_cast<std::size_t>(n));
  c.prio.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto option_count = index.job(j).options.size();
    c.alloc.push_back(static_cast<std::int32_t>(rng.next_below(option_count)));
  }
  for (int j = 0; j < n; ++j) {
    c.prio.push_back(rng.next_double());
  }
  if (variant == Variant::selection) {
    c.incl.reserve(static_cast<std::size_t>(index.order_count()));
    for (int o = 0; o < index.order_count(); ++o) {
      c.incl.push_back(rng.next_bool(0.5) ? 1 : 0);
    }
  }
  return c;
}

Chromosome crossover(const Chromosome& a, const Chromosome& b, Rng& rng) {
  Chromosome child = a;
  for (std::size_t i = 0; i < child.alloc.size(); ++i) {
    if (rng.next_bool(0.5)) child.alloc[i] = b.alloc[i];
  }
  for (std::size_t i = 0; i < child.prio.size(); ++i) {
    if (rng.next_bool(0.5)) child.prio[i] = b.prio[i];
  }
  for (std::size_t i = 0; i < child.incl.size(); ++i) {
    if (rng.next_bool(0.5)) child.incl[i] = b.incl[i];
  }
  return child;
}

void mutate_in_place(Chromosome& c, double rate, const ScenarioIndex& index, Rng& rng) {
  for (std::size_t i = 0; i < c.alloc.size(); ++i) {
    if (rng.next_bool(rate)) {
      c.alloc[i] = static_cast<std::int32_t>(
          rng.next_below(index.job(static_cast<int>(i)).options.size()));
    }
  }
  for (std::size_t i = 0; i < c.prio.size(); ++i) {
    if (rng.next_bool(rate)) c.prio[i] = rng.next_double();
  }
  for (std::size_t i = 0; i < c.incl.size(); ++i) {
    if (rng.next_bool(rate)) c.incl[i] = c.incl[i] ? 0 : 1;
  }
}

Chromosome mutate(const Chromosome& c, double rate, const ScenarioIndex& index, Rng& rng) {
  Chromosome out = c;
  mutate_in_place(out, rate, index, rng);
  return out;
}

void decode_into(const Chromosome& c, const ScenarioIndex& index, DecodedGenome& out) {
  out.allocation = c.alloc;
  out.priority = c.prio;
  if (c.variant == Variant::selection) {
    out.included.assign(c.incl.begin(), c.incl.end());
  } else {
    out.included.assign(static_cast<std::size_t>(index.order_count()), 1);
  }
}

DecodedGenome decode(const Chromosome& c, const ScenarioIndex& index) {
  DecodedGenome g;
  decode_into(c, index, g);
  return g;
}

std::string format_genome(const Chromosome& c) {
  std::string out = variant_name(c.variant);
  for (std::int32_t a : c.alloc) {
    out += ',';
    out += std::to_string(a);
  }
  for (double p : c.prio) {
    out += ',';
    out += fmt_double(p);
  }
  for (std::uint8_t b : c.incl) {
    out += ',';
    out += b ? '1' : '0';
  }
  return out;
}

namespace {

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(',', start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::int64_t> to_int(std::string_view t) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
  return v;
}

std::optional<double> to_double(std::string_view t) {
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<Chromosome> parse_genome(std::string_view text, const ScenarioIndex& index) {
  const auto parts = split_commas(text);
  if (parts.empty()) return std::nullopt;
  const auto variant = parse_variant(parts[0]);
  if (!variant) return std::nullopt;

  const std::size_t n = static_cast<std::size_t>(index.job_count());
  const std::size_t m =
      *variant == Variant::selection ? static_cast<std::size_t>(index.order_count()) : 0;
  if (parts.size() != 1 + 2 * n + m) return std::nullopt;

  Chromosome c;
  c.variant = *variant;
  c.alloc.reserve(n);
  c.prio.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto v = to_int(parts[1 + j]);
    if (!v || *v < 0 ||
        *v >= static_cast<std::int64_t>(index.job(static_cast<int>(j)).options.size())) {
      return std::nullopt;
    }
    c.alloc.push_back(static_cast<std::int32_t>(*v));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto v = to_double(parts[1 + n + j]);
    if (!v || !(*v >= 0.0) || !(*v < 1.0)) return std::nullopt;
    c.prio.push_back(*v);
  }
  for (std::size_t o = 0; o < m; ++o) {
    const std::string_view t = parts[1 + 2 * n + o];
    if (t == "0") {
      c.incl.push_back(0);
    } else if (t == "1") {
      c.incl.push_back(1);
    } else {
      return std::nullopt;
    }
  }
  return c;
}

}  // namespace valuesched
