#include "valuesched/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "valuesched/encoding.hpp"
#include "valuesched/harness.hpp"
#include "valuesched/moead.hpp"
#include "valuesched/model.hpp"

namespace valuesched {

std::optional<std::pair<std::string, int>> parse_listen_address(std::string_view addr) {
  const std::size_t colon = addr.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == addr.size()) {
    return std::nullopt;
  }
  int port = 0;
  for (const char c : addr.substr(colon + 1)) {
    if (c < '0' || c > '9') return std::nullopt;
    port = port * 10 + (c - '0');
    if (port > 65535) return std::nullopt;
  }
  if (port == 0) return std::nullopt;
  return std::make_pair(std::string(addr.substr(0, colon)), port);
}

namespace {

using nlohmann::json;

HttpReply malformed(const std::string& message) {
  return {422, json{{"error", message}}.dump() + "\n"};
}

HttpReply invalid(std::vector<std::string> violations) {
  return {400, json{{"violations", violations}}.dump() + "\n"};
}

}  // namespace

HttpReply handle_optimize(std::string_view body, const ServiceConfig& config) {
  if (body.size() > config.max_body_bytes) {
    return {413, json{{"error", "request body exceeds " +
                                    std::to_string(config.max_body_bytes) + " bytes"}}
                     .dump() +
                 "\n"};
  }

  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error& e) {
    return malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!request.is_object()) return malformed("request must be a JSON object");
  auto scenario_it = request.find("scenario");
  if (scenario_it == request.end() || !scenario_it->is_object()) {
    return malformed("request needs a 'scenario' object");
  }

  Variant variant = Variant::standard;
  if (auto it = request.find("variant"); it != request.end()) {
    if (!it->is_string()) return malformed("'variant' must be a string");
    const auto parsed = parse_variant(it->get<std::string>());
    if (!parsed) return malformed("'variant' must be 'standard' or 'selection'");
    variant = *parsed;
  }
  MoeadConfig cfg;
  cfg.seed = 1;
  cfg.threads = config.threads;
  if (auto it = request.find("population"); it != request.end()) {
    if (!it->is_number_integer()) return malformed("'population' must be an integer");
    cfg.population = it->get<int>();
  }
  if (auto it = request.find("generations"); it != request.end()) {
    if (!it->is_number_integer()) return malformed("'generations' must be an integer");
    cfg.generations = it->get<int>();
  }
  if (auto it = request.find("seed"); it != request.end()) {
    if (!it->is_number_integer()) return malformed("'seed' must be an integer");
    cfg.seed = it->get<std::uint64_t>();
  }

  Scenario scenario;
  try {
    scenario = load_scenario(scenario_it->dump());
  } catch (const ParseError& e) {
    return malformed(e.what());
  }
  ValidationReport report = validate_scenario(scenario);
  if (cfg.population < 2) report.violations.push_back("population must be at least 2");
  if (cfg.neighborhood_t > cfg.population) cfg.neighborhood_t = cfg.population;
  if (cfg.generations < 1) report.violations.push_back("generations must be at least 1");
  if (cfg.generations > config.max_generations) {
    report.violations.push_back("generations exceeds the server cap of " +
                                std::to_string(config.max_generations));
  }
  if (!report.ok()) return invalid(report.violations);

  const ScenarioIndex index(scenario);
  const ParetoArchive archive = run(index, cfg, variant);
  const RepresentativePoint rep = representative_point(archive);

  json out;
  out["version"] = config.version;
  out["variant"] = variant_name(variant);
  out["seed"] = cfg.seed;
  out["archive"] = json::array();
  for (const ArchiveEntry& e : archive.entries()) {
    out["archive"].push_back({{"makespan_s", e.objectives.makespan_s},
                              {"profit", e.objectives.total_profit},
                              {"elements_produced", e.elements_produced},
                              {"genome", format_genome(e.genome)}});
  }
  out["representative"] = {{"makespan_s", rep.makespan_s},
                           {"profit", rep.profit},
                           {"elements_produced", rep.elements_produced}};
  return {200, out.dump() + "\n"};
}

HttpReply handle_health(const ServiceConfig& config) {
  return {200, json{{"status", "ok"}, {"version", config.version}}.dump() + "\n"};
}

struct OptimizeServer::Impl {
  ServiceConfig config;
  httplib::Server server;
};

OptimizeServer::OptimizeServer(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  impl_->server.set_payload_max_length(impl_->config.max_body_bytes * 2 + 4096);
  impl_->server.Post("/optimize", [this](const httplib::Request& req, httplib::Response& res) {
    const HttpReply reply = handle_optimize(req.body, impl_->config);
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
  impl_->server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    const HttpReply reply = handle_health(impl_->config);
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
}

OptimizeServer::~OptimizeServer() { stop(); }

int OptimizeServer::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool OptimizeServer::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool OptimizeServer::serve() { return impl_->server.listen_after_bind(); }

void OptimizeServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace valuesched
