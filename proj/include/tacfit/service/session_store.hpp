#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tacfit/json_io.hpp"

namespace tacfit::service {

struct StateSnapshot {
  std::int64_t timestamp = 0;
  MatchState state;
};

struct RecommendationEntry {
  std::int64_t timestamp = 0;
  Json recommendation;
};

/// Persisted coaching session. Snapshot and recommendation histories are
/// append-only and ordered by timestamp.
struct SessionRecord {
  std::string id;
  PartialAttributeVector team;
  std::optional<PartialAttributeVector> opponent;
  ScoringConfig config;
  std::vector<StateSnapshot> snapshots;
  std::vector<RecommendationEntry> recommendations;
};

Json to_json(const SessionRecord& r);
SessionRecord session_from_json(const Json& j);

/// True for 1-64 characters of [A-Za-z0-9_-].
bool valid_session_id(std::string_view id);

/// Directory of <id>.json files. Writes to one session are serialized; reads
/// and writes to different sessions proceed independently.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir);

  /// Assigns a fresh id and persists the record.
  SessionRecord create(SessionRecord record);

  std::optional<SessionRecord> get(const std::string& id) const;

  /// Runs `mutate` on the stored record under the session's write lock and
  /// persists the result. Throws NotFound.
  SessionRecord update(const std::string& id, const std::function<void(SessionRecord&)>& mutate);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& id) const;
  std::mutex& lock_for(const std::string& id) const;
  void write(const SessionRecord& record) const;

  std::filesystem::path dir_;
  mutable std::mutex locks_mutex_;
  mutable std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

}  // namespace tacfit::service
