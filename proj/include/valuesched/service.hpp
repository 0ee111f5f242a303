#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace valuesched {

// "host:port" as carried by the VALUESCHED_ADDR environment variable.
std::optional<std::pair<std::string, int>> parse_listen_address(std::string_view addr);

struct ServiceConfig {
  std::size_t max_body_bytes = 1 << 20;  // request bodies beyond this get 413
  int max_generations = 5000;            // per-request latency guard
  int threads = 0;                       // evaluation threads per request
  std::string version = "0.1.0";
};

struct HttpReply {
  int status = 0;
  std::string body;  // application/json
};

// Pure request handlers: the reply is a function of the body and the
// config alone, nothing is retained between calls. The HTTP layer below
// is a thin binding over these.
HttpReply handle_optimize(std::string_view body, const ServiceConfig& config);
HttpReply handle_health(const ServiceConfig& config);

// POST /optimize, GET /health.
class OptimizeServer {
 public:
  explicit OptimizeServer(ServiceConfig config);
  ~OptimizeServer();
  OptimizeServer(const OptimizeServer&) = delete;
  OptimizeServer& operator=(const OptimizeServer&) = delete;

  // Returns the bound port, or -1 on failure.
  int bind_any_port(const std::string& host);
  bool bind(const std::string& host, int port);
  // Blocks until stop(); call after a successful bind.
  bool serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace valuesched
