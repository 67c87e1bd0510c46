#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tacfit/evaluation.hpp"
#include "tacfit/service/session_store.hpp"
#include "tacfit/strategy_library.hpp"

namespace httplib {
class Server;
}

namespace tacfit::service {

struct ServiceConfig {
  std::optional<std::filesystem::path> library_path;  // built-in canonical five when absent
  std::optional<std::filesystem::path> fixtures_path;
  std::filesystem::path sessions_dir = "sessions";
};

struct HttpResponse {
  int status = 200;
  std::string body;
};

/// Routes:
///   GET  /strategies                 library
///   POST /strategies/reload          re-read the library file
///   POST /recommend                  {team, opponent?, state?, params?}
///   POST /whatif                     {base: <recommend body>, overrides}
///   POST /sessions                   {team, opponent?, params?, state?, timestamp?}
///   GET  /sessions/{id}
///   POST /sessions/{id}/snapshots    {state, timestamp?}
///   POST /evaluate/{kind}            evaluation options
/// Errors come back as {error, field, message}: 422 for shape mismatches,
/// 404 for unknown sessions, kinds and routes, 400 otherwise.
class Service {
 public:
  explicit Service(ServiceConfig config);

  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  std::shared_ptr<const StrategyLibrary> library() const;
  /// Replaces the library atomically; requests in flight keep the old one.
  void reload();

 private:
  HttpResponse route(std::string_view method, const std::vector<std::string>& parts,
                     std::string_view body);

  ServiceConfig config_;
  SessionStore sessions_;
  std::vector<ScenarioSpec> fixtures_;
  mutable std::mutex library_mutex_;
  std::shared_ptr<const StrategyLibrary> library_;
};

/// Forwards every request on `server` to `service.handle`.
void bind_routes(httplib::Server& server, Service& service);

}  // namespace tacfit::service
