#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "iconix/artifacts.hpp"
#include "iconix/backends.hpp"
#include "iconix/config.hpp"

namespace iconix {

enum class Stage { Created, Ideated, Scaffolded, ExemplarsReady, Simplified, GridReady };
std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

// Stage produced by a request name: ideate, scaffold, exemplars, simplify, grid.
std::optional<Stage> stage_for_request(std::string_view request);
// Snapshot key holding a stage's output ("ideate", ...); empty for Created.
std::string_view snapshot_key(Stage s);

struct SessionState {
  std::string id;
  Stage stage = Stage::Created;
  std::uint64_t revision = 0;  // bumped by every successful change
  Config config;
  nlohmann::json snapshots = nlohmann::json::object();
};

nlohmann::json session_json(const SessionState& s);
SessionState session_from_json(const nlohmann::json& j);

// Error raised while a session is at `stage`; the HTTP layer reports both.
class StageError : public Error {
 public:
  StageError(const Error& cause, Stage stage) : Error(cause.code(), cause.what()), stage_(stage) {}
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

using BackendFactory = std::function<BackendSet(const Config&)>;

// Default factory: configured endpoints over in-process backends.
BackendSet default_backend_factory(const Config& config);

// Sessions live in <root>/<id>/ as state.json (body plus its SHA-256) and an
// artifacts/ store. Operations on one session are serialized; different
// sessions proceed independently.
class SessionManager {
 public:
  explicit SessionManager(std::filesystem::path root, BackendFactory factory = default_backend_factory,
                          Config defaults = {});

  SessionState create(const nlohmann::json& overrides);
  // NotFound for unknown ids, CorruptStore when the state or an artifact it
  // references fails its checksum.
  SessionState get(const std::string& id);
  // Runs the stage named by `request` (see stage_for_request). The target must
  // be at most one past the current stage; targets at or before it redo that
  // stage and drop later snapshots. StageOrderViolation otherwise.
  SessionState advance(const std::string& id, const std::string& request, const nlohmann::json& payload);
  // Adds style variants to a GridReady session; the stage is unchanged.
  SessionState restyle(const std::string& id, const nlohmann::json& payload);

  Bytes artifact(const std::string& id, const std::string& ref, bool* is_json = nullptr);
  nlohmann::json scatter(const std::string& id, const std::string& view);

  // Drops the in-memory copy; the next access reloads from disk.
  void evict(const std::string& id);

  const std::filesystem::path& root() const { return root_; }

 private:
  struct Slot;
  std::shared_ptr<Slot> slot(const std::string& id);
  void load_into(Slot& s, const std::string& id);
  void persist(const Slot& s) const;

  std::filesystem::path root_;
  BackendFactory factory_;
  Config defaults_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace iconix
