#include "tacfit/service/session_store.hpp"

#include <atomic>
#include <cstdio>
#include <random>

#include "tacfit/errors.hpp"

namespace tacfit::service {

namespace {

std::string random_id() {
  static std::mutex mutex;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mutex);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

Json to_json(const SessionRecord& r) {
  Json snapshots = Json::array();
  for (const StateSnapshot& s : r.snapshots) {
    snapshots.push_back({{"timestamp", s.timestamp}, {"state", to_json(s.state)}});
  }
  Json recs = Json::array();
  for (const RecommendationEntry& e : r.recommendations) {
    recs.push_back({{"timestamp", e.timestamp}, {"recommendation", e.recommendation}});
  }
  Json j = {{"id", r.id},
            {"team", to_json(r.team)},
            {"params", to_json(r.config)},
            {"snapshots", snapshots},
            {"recommendations", recs}};
  if (r.opponent) j["opponent"] = to_json(*r.opponent);
  return j;
}

SessionRecord session_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("session record must be an object");
  SessionRecord r{.team = profile_from_json(j.at("team"), "team")};
  r.id = j.at("id").get<std::string>();
  if (j.contains("opponent")) r.opponent = profile_from_json(j.at("opponent"), "opponent");
  r.config = config_from_json(j.at("params"), "params");
  for (const Json& s : j.at("snapshots")) {
    r.snapshots.push_back({s.at("timestamp").get<std::int64_t>(), state_from_json(s.at("state"), "state")});
  }
  for (const Json& e : j.at("recommendations")) {
    r.recommendations.push_back({e.at("timestamp").get<std::int64_t>(), e.at("recommendation")});
  }
  return r;
}

bool valid_session_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_';
    if (!ok) return false;
  }
  return true;
}

SessionStore::SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoFailure("cannot create session directory '" + dir_.string() + "'", dir_.string());
}

std::filesystem::path SessionStore::path_for(const std::string& id) const {
  return dir_ / (id + ".json");
}

std::mutex& SessionStore::lock_for(const std::string& id) const {
  std::lock_guard guard(locks_mutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

void SessionStore::write(const SessionRecord& record) const {
  const std::filesystem::path target = path_for(record.id);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  write_text_file(tmp, dump(to_json(record)));
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoFailure("cannot persist session '" + record.id + "'", target.string());
}

SessionRecord SessionStore::create(SessionRecord record) {
  for (;;) {
    record.id = random_id();
    std::lock_guard lock(lock_for(record.id));
    if (std::filesystem::exists(path_for(record.id))) continue;
    write(record);
    return record;
  }
}

std::optional<SessionRecord> SessionStore::get(const std::string& id) const {
  if (!valid_session_id(id)) return std::nullopt;
  const std::filesystem::path path = path_for(id);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return session_from_json(load_json_file(path));
}

SessionRecord SessionStore::update(const std::string& id,
                                   const std::function<void(SessionRecord&)>& mutate) {
  if (!valid_session_id(id)) throw NotFound("unknown session '" + id + "'", "id");
  std::lock_guard lock(lock_for(id));
  std::optional<SessionRecord> record = get(id);
  if (!record) throw NotFound("unknown session '" + id + "'", "id");
  mutate(*record);
  record->id = id;
  write(*record);
  return *record;
}

}  // namespace tacfit::service
