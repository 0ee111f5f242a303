#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "valuesched/service.hpp"

namespace {

// VALUESCHED_ADDR holds "host:port"; explicit flags win over it.
void apply_env_addr(std::string& host, int& port, bool host_set, bool port_set) {
  const char* env = std::getenv("VALUESCHED_ADDR");
  if (!env) return;
  const auto parsed = valuesched::parse_listen_address(env);
  if (!parsed) {
    std::cerr << "warning: ignoring unparsable VALUESCHED_ADDR\n";
    return;
  }
  if (!host_set) host = parsed->first;
  if (!port_set) port = parsed->second;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stateless optimization endpoint: POST /optimize, GET /health"};
  std::string host = "0.0.0.0";
  int port = 8080;
  valuesched::ServiceConfig config;
  auto* host_opt = app.add_option("--addr", host, "Listen address");
  auto* port_opt = app.add_option("--port", port, "Listen port");
  app.add_option("--max-body-bytes", config.max_body_bytes, "Request size cap");
  app.add_option("--max-generations", config.max_generations, "Per-request generation cap");
  app.add_option("--threads", config.threads, "Evaluation threads per request (0 = all cores)");
  CLI11_PARSE(app, argc, argv);
  apply_env_addr(host, port, host_opt->count() > 0, port_opt->count() > 0);

  valuesched::OptimizeServer server(std::move(config));
  if (!server.bind(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cout << "listening on " << host << ":" << port << std::endl;
  return server.serve() ? 0 : 1;
}
