#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "likemind/serialize.hpp"

namespace likemind {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  EngineParams defaults;
  std::chrono::seconds session_ttl{3600};
  std::vector<std::string> cors_origins;  // "*" allows any origin

  // Reproducible mode: seeded session ids, swap-count budget, a logical
  // clock for timestamps and no timing fields in responses.
  bool deterministic = false;
  std::uint64_t seed = 1;
  std::size_t deterministic_swaps = 1000;

  /// Parses "host:port", ":port" or "port".
  void set_bind(std::string_view bind);
};

struct Response {
  int status = 200;
  Json body;
};

/// The HTTP API minus the transport: routes a (method, path, body) triple
/// to the engine and returns a JSON response. Thread-safe; requests for the
/// same session are serialized, different sessions run concurrently.
class Service {
 public:
  Service(const Dataset& dataset, CategoryAliases aliases, ServerConfig config);

  Response handle(std::string_view method, std::string_view path, std::string_view body);

  std::size_t session_count() const;
  /// Drops sessions idle for longer than the TTL. Returns how many.
  std::size_t evict_expired();

  const ServerConfig& config() const noexcept { return config_; }
  const Engine& engine() const noexcept { return engine_; }

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
    std::chrono::steady_clock::time_point last_access;
  };

  Response create_session(const Json& body);
  Response get_session(const std::string& id);
  Response recommend(const std::string& id, const Json& body);
  Response bookmark(const std::string& id, const Json& body);
  Response get_poi(const std::string& id);

  std::shared_ptr<Entry> find(const std::string& id);
  std::string new_id();
  Timestamp now();

  const Dataset* dataset_;
  Engine engine_;
  ServerConfig config_;

  mutable std::mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 id_rng_;
  Timestamp logical_clock_;
};

/// Runs the HTTP server until stopped. Every request is appended to
/// `record_path` (JSON lines) when it is not empty.
void run_http_server(Service& service, const std::string& record_path = "");

/// Feeds a recorded request log through the service and returns the
/// responses, one JSON line per request: {"status", "body"}.
std::vector<std::string> replay(Service& service, std::istream& log);

}  // namespace likemind
