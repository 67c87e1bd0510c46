#include "tacfit/service/service.hpp"

#include <chrono>
#include <iostream>

#include "httplib.h"
#include "tacfit/errors.hpp"
#include "tacfit/evaluation_runner.hpp"

namespace tacfit::service {

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const std::size_t next = path.find('/', pos);
    const std::size_t end = next == std::string_view::npos ? path.size() : next;
    if (end > pos) parts.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  return parts;
}

HttpResponse json_response(int status, const Json& j) { return {status, dump(j)}; }

HttpResponse error_response(int status, std::string_view kind, std::string_view field,
                            std::string_view message) {
  return json_response(status, {{"error", kind}, {"field", field}, {"message", message}});
}

HttpResponse method_not_allowed(std::string_view method) {
  return error_response(405, "MethodNotAllowed", "", std::string(method) + " not allowed here");
}

Json parse_body(std::string_view body) {
  if (body.empty()) return Json::object();
  return parse_json_text(body, "request body");
}

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::int64_t timestamp_from(const Json& j) {
  if (!j.contains("timestamp")) return now_ms();
  const Json& v = j.at("timestamp");
  if (!v.is_number_integer()) throw ParseError("timestamp must be an integer", "timestamp");
  return v.get<std::int64_t>();
}

RankRequest session_request(const SessionRecord& r, const MatchState& state) {
  return {.team = r.team,
          .opponent = r.opponent,
          .state = state,
          .params = r.config.params,
          .mode = r.config.mode};
}

std::shared_ptr<const StrategyLibrary> load(const ServiceConfig& config) {
  if (!config.library_path) return std::make_shared<const StrategyLibrary>(builtin_canonical());
  LoadedLibrary loaded = load_library(*config.library_path);
  for (const std::string& w : loaded.warnings) std::cerr << "warning: " << w << '\n';
  return std::make_shared<const StrategyLibrary>(std::move(loaded.library));
}

}  // namespace

Service::Service(ServiceConfig config)
    : config_(std::move(config)), sessions_(config_.sessions_dir), library_(load(config_)) {
  if (config_.fixtures_path) fixtures_ = load_scenarios(*config_.fixtures_path);
}

std::shared_ptr<const StrategyLibrary> Service::library() const {
  std::lock_guard lock(library_mutex_);
  return library_;
}

void Service::reload() {
  auto fresh = load(config_);
  std::lock_guard lock(library_mutex_);
  library_ = std::move(fresh);
}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             std::string_view body) {
  try {
    return route(method, split_path(path), body);
  } catch (const ShapeMismatch& e) {
    return error_response(422, e.kind(), e.field(), e.what());
  } catch (const NotFound& e) {
    return error_response(404, e.kind(), e.field(), e.what());
  } catch (const Error& e) {
    return error_response(400, e.kind(), e.field(), e.what());
  } catch (const Json::exception& e) {
    return error_response(400, "ParseError", "", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "InternalError", "", e.what());
  }
}

HttpResponse Service::route(std::string_view method, const std::vector<std::string>& parts,
                            std::string_view body) {
  const bool get = method == "GET";
  const bool post = method == "POST";
  const std::size_t n = parts.size();

  if (n >= 1 && parts[0] == "strategies") {
    if (n == 1) {
      if (!get) return method_not_allowed(method);
      return json_response(200, to_json(*library()));
    }
    if (n == 2 && parts[1] == "reload") {
      if (!post) return method_not_allowed(method);
      reload();
      return json_response(200, to_json(*library()));
    }
  }

  if (n == 1 && parts[0] == "recommend") {
    if (!post) return method_not_allowed(method);
    const RankRequest request = request_from_json(parse_body(body));
    return json_response(200, to_json(rank_strategies(request, *library())));
  }

  if (n == 1 && parts[0] == "whatif") {
    if (!post) return method_not_allowed(method);
    const Json j = parse_body(body);
    if (!j.is_object() || !j.contains("base")) throw ParseError("missing key 'base'", "base");
    for (const auto& [k, v] : j.items()) {
      if (k != "base" && k != "overrides") throw ParseError("unknown key '" + k + "'", k);
    }
    const RankRequest base = request_from_json(j.at("base"), "base");
    const WhatIfOverrides overrides = j.contains("overrides")
                                          ? overrides_from_json(j.at("overrides"), "overrides")
                                          : WhatIfOverrides{};
    return json_response(200, to_json(whatif(base, overrides, *library())));
  }

  if (n >= 1 && parts[0] == "sessions") {
    if (n == 1) {
      if (!post) return method_not_allowed(method);
      const Json j = parse_body(body);
      const RankRequest seed = request_from_json(
          [&] {
            Json r = j;
            if (r.is_object()) r.erase("timestamp");
            return r;
          }(),
          "");
      SessionRecord record{.team = seed.team,
                           .opponent = seed.opponent,
                           .config = {seed.params, seed.mode}};
      if (j.contains("state")) {
        const std::int64_t ts = timestamp_from(j);
        record.snapshots.push_back({ts, seed.state});
        record.recommendations.push_back(
            {ts, to_json(rank_strategies(seed, *library()))});
      }
      return json_response(201, to_json(sessions_.create(std::move(record))));
    }
    if (n == 2) {
      if (!get) return method_not_allowed(method);
      const std::optional<SessionRecord> record = sessions_.get(parts[1]);
      if (!record) throw NotFound("unknown session '" + parts[1] + "'", "id");
      return json_response(200, to_json(*record));
    }
    if (n == 3 && parts[2] == "snapshots") {
      if (!post) return method_not_allowed(method);
      const Json j = parse_body(body);
      if (!j.is_object() || !j.contains("state")) throw ParseError("missing key 'state'", "state");
      for (const auto& [k, v] : j.items()) {
        if (k != "state" && k != "timestamp") throw ParseError("unknown key '" + k + "'", k);
      }
      const MatchState state = state_from_json(j.at("state"), "state");
      const std::int64_t ts = timestamp_from(j);
      const auto lib = library();
      const SessionRecord updated = sessions_.update(parts[1], [&](SessionRecord& r) {
        if (!r.snapshots.empty() && ts < r.snapshots.back().timestamp) {
          throw InvalidArgument("timestamp precedes the latest snapshot", "timestamp");
        }
        r.snapshots.push_back({ts, state});
        r.recommendations.push_back({ts, to_json(rank_strategies(session_request(r, state), *lib))});
      });
      return json_response(201, to_json(updated));
    }
  }

  if (n == 2 && parts[0] == "evaluate") {
    if (!post) return method_not_allowed(method);
    const EvaluationKind kind = parse_evaluation_kind(parts[1]);
    const EvaluationOptions options = evaluation_options_from_json(parse_body(body));
    if (fixtures_.empty() && kind != EvaluationKind::kPilot) {
      throw InvalidArgument("service started without a fixtures file", "fixtures");
    }
    return json_response(200, run_evaluation(kind, options, fixtures_, *library()).report);
  }

  std::string joined;
  for (const std::string& p : parts) joined += "/" + p;
  return error_response(404, "NotFound", "path", "no route for '" + joined + "'");
}

void bind_routes(httplib::Server& server, Service& service) {
  const auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  server.Put(".*", forward);
  server.Delete(".*", forward);
  server.Patch(".*", forward);
}

}  // namespace tacfit::service
