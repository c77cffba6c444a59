#include "iconix/session.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "iconix/error.hpp"
#include "iconix/pipeline.hpp"

namespace iconix {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 6> kStageNames{"Created",   "Ideated",    "Scaffolded",
                                                      "ExemplarsReady", "Simplified", "GridReady"};
constexpr std::array<std::string_view, 6> kSnapshotKeys{"", "ideate", "scaffold", "exemplars", "simplify", "grid"};

std::string new_session_id() {
  static std::mutex m;
  static std::random_device rd;
  std::lock_guard lock(m);
  std::ostringstream out;
  for (int i = 0; i < 4; ++i) out << std::hex << std::setw(8) << std::setfill('0') << rd();
  return out.str();
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

void collect_refs(const json& j, std::vector<std::string>& out) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (ArtifactStore::valid_ref(s)) out.push_back(s);
  } else if (j.is_structured()) {
    for (const auto& v : j) collect_refs(v, out);
  }
}

void write_atomically(const fs::path& target, const std::string& text) {
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot replace " + target.string() + ": " + ec.message());
}

std::string checksum_of(const std::string& text) {
  return sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace

std::string_view to_string(Stage s) { return kStageNames[static_cast<std::size_t>(s)]; }

std::optional<Stage> parse_stage(std::string_view s) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == s) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

std::optional<Stage> stage_for_request(std::string_view request) {
  for (std::size_t i = 1; i < kSnapshotKeys.size(); ++i) {
    if (kSnapshotKeys[i] == request) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

std::string_view snapshot_key(Stage s) { return kSnapshotKeys[static_cast<std::size_t>(s)]; }

json session_json(const SessionState& s) {
  return {{"id", s.id},
          {"stage", to_string(s.stage)},
          {"revision", s.revision},
          {"config", config_json(s.config)},
          {"snapshots", s.snapshots}};
}

SessionState session_from_json(const json& j) {
  SessionState s;
  try {
    s.id = j.at("id").get<std::string>();
    const auto stage = parse_stage(j.at("stage").get<std::string>());
    if (!stage) throw Error(ErrorCode::CorruptStore, "unknown stage in session state");
    s.stage = *stage;
    s.revision = j.at("revision").get<std::uint64_t>();
    s.config = merge_config(Config{}, j.at("config"));
    s.snapshots = j.at("snapshots");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptStore, std::string("malformed session state: ") + e.what());
  }
  return s;
}

BackendSet default_backend_factory(const Config& config) {
  return make_backends(config.backends, config.mock_options());
}

struct SessionManager::Slot {
  std::mutex mutex;
  fs::path dir;
  std::optional<SessionState> state;
  std::unique_ptr<ArtifactStore> store;
  std::optional<BackendSet> backends;
};

SessionManager::SessionManager(fs::path root, BackendFactory factory, Config defaults)
    : root_(std::move(root)), factory_(std::move(factory)), defaults_(std::move(defaults)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create session root " + root_.string() + ": " + ec.message());
  defaults_.validate();
}

std::shared_ptr<SessionManager::Slot> SessionManager::slot(const std::string& id) {
  if (!valid_id(id)) throw Error(ErrorCode::NotFound, "no session '" + id + "'");
  std::lock_guard lock(mutex_);
  auto& s = slots_[id];
  if (!s) {
    s = std::make_shared<Slot>();
    s->dir = root_ / id;
  }
  return s;
}

void SessionManager::persist(const Slot& s) const {
  const json body = session_json(*s.state);
  const std::string text = body.dump();
  const json doc = {{"sha256", checksum_of(text)}, {"body", body}};
  write_atomically(s.dir / "state.json", doc.dump(2) + "\n");
}

void SessionManager::load_into(Slot& s, const std::string& id) {
  if (s.state) return;
  const fs::path file = s.dir / "state.json";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "no session '" + id + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::CorruptStore, "session state is not JSON: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("body") || !doc.contains("sha256")) {
    throw Error(ErrorCode::CorruptStore, "session state lacks its checksum");
  }
  if (checksum_of(doc.at("body").dump()) != doc.at("sha256")) {
    throw Error(ErrorCode::CorruptStore, "session state fails its checksum");
  }
  SessionState state = session_from_json(doc.at("body"));
  if (state.id != id) throw Error(ErrorCode::CorruptStore, "session state belongs to another id");
  auto store = std::make_unique<ArtifactStore>(s.dir / "artifacts");
  std::vector<std::string> refs;
  collect_refs(state.snapshots, refs);
  for (const auto& ref : refs) store->verify(ref);
  s.store = std::move(store);
  s.state = std::move(state);
}

SessionState SessionManager::create(const json& overrides) {
  SessionState state;
  state.config = merge_config(defaults_, overrides);
  state.id = new_session_id();
  auto s = slot(state.id);
  std::lock_guard lock(s->mutex);
  fs::create_directories(s->dir);
  s->store = std::make_unique<ArtifactStore>(s->dir / "artifacts");
  s->state = std::move(state);
  persist(*s);
  return *s->state;
}

SessionState SessionManager::get(const std::string& id) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  load_into(*s, id);
  return *s->state;
}

SessionState SessionManager::advance(const std::string& id, const std::string& request, const json& payload) {
  const auto target = stage_for_request(request);
  if (!target) throw Error(ErrorCode::NotFound, "unknown stage request '" + request + "'");
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  load_into(*s, id);
  const SessionState& current = *s->state;
  if (static_cast<int>(*target) > static_cast<int>(current.stage) + 1) {
    throw StageError(Error(ErrorCode::StageOrderViolation,
                           std::string(request) + " needs stage " +
                               std::string(to_string(static_cast<Stage>(static_cast<int>(*target) - 1))) +
                               " but the session is at " + std::string(to_string(current.stage))),
                     current.stage);
  }
  if (!s->backends) s->backends = factory_(current.config);
  const Pipeline pipeline(current.config, *s->backends, *s->store);
  const json& snaps = current.snapshots;
  auto prior = [&](Stage st) -> const json& { return snaps.at(std::string(snapshot_key(st))); };
  const json body = payload.is_null() ? json::object() : payload;
  if (!body.is_object()) throw StageError(Error(ErrorCode::InvalidConfig, "request body must be an object"), current.stage);

  json output;
  try {
    switch (*target) {
      case Stage::Ideated: {
        if (!body.contains("concept") || !body.at("concept").is_string()) {
          throw Error(ErrorCode::InvalidConfig, "ideate needs a 'concept' string");
        }
        output = pipeline.ideate(body.at("concept").get<std::string>());
        break;
      }
      case Stage::Scaffolded: {
        if (!body.contains("candidate_label") || !body.at("candidate_label").is_string()) {
          throw Error(ErrorCode::InvalidConfig, "scaffold needs a 'candidate_label' string");
        }
        output = pipeline.scaffold(prior(Stage::Ideated), body.at("candidate_label").get<std::string>());
        break;
      }
      case Stage::ExemplarsReady:
        output = pipeline.exemplars(prior(Stage::Scaffolded), body);
        break;
      case Stage::Simplified: {
        const std::string key(snapshot_key(Stage::Simplified));
        output = pipeline.simplify(prior(Stage::ExemplarsReady), body, snaps.contains(key) ? snaps.at(key) : json());
        break;
      }
      case Stage::GridReady:
        output = pipeline.grid(prior(Stage::Simplified), body,
                               prior(Stage::Scaffolded).at("candidate").get<std::string>());
        break;
      case Stage::Created:
        break;
    }
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(e, current.stage);
  } catch (const json::exception& e) {
    throw StageError(Error(ErrorCode::InvalidConfig, std::string("bad request: ") + e.what()), current.stage);
  }

  SessionState next = current;
  for (int st = static_cast<int>(*target) + 1; st <= static_cast<int>(Stage::GridReady); ++st) {
    next.snapshots.erase(std::string(snapshot_key(static_cast<Stage>(st))));
  }
  next.snapshots[std::string(snapshot_key(*target))] = std::move(output);
  next.stage = *target;
  ++next.revision;
  std::swap(*s->state, next);
  try {
    persist(*s);
  } catch (...) {
    std::swap(*s->state, next);
    throw;
  }
  return *s->state;
}

SessionState SessionManager::restyle(const std::string& id, const json& payload) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  load_into(*s, id);
  const SessionState& current = *s->state;
  if (current.stage != Stage::GridReady) {
    throw StageError(Error(ErrorCode::StageOrderViolation,
                           "restyle needs stage GridReady but the session is at " + std::string(to_string(current.stage))),
                     current.stage);
  }
  if (!s->backends) s->backends = factory_(current.config);
  const Pipeline pipeline(current.config, *s->backends, *s->store);
  SessionState next = current;
  try {
    const std::string key(snapshot_key(Stage::GridReady));
    next.snapshots[key] = pipeline.restyle(current.snapshots.at(key), payload);
  } catch (const Error& e) {
    throw StageError(e, current.stage);
  } catch (const json::exception& e) {
    throw StageError(Error(ErrorCode::InvalidConfig, std::string("bad request: ") + e.what()), current.stage);
  }
  ++next.revision;
  std::swap(*s->state, next);
  try {
    persist(*s);
  } catch (...) {
    std::swap(*s->state, next);
    throw;
  }
  return *s->state;
}

Bytes SessionManager::artifact(const std::string& id, const std::string& ref, bool* is_json) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  load_into(*s, id);
  Bytes bytes = s->store->get(ref);
  if (is_json != nullptr) *is_json = s->store->is_json(ref);
  return bytes;
}

json SessionManager::scatter(const std::string& id, const std::string& view) {
  const View v = require_view(view);
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  load_into(*s, id);
  const json& snaps = s->state->snapshots;
  const std::string key(snapshot_key(Stage::Simplified));
  if (!snaps.contains(key)) {
    throw StageError(Error(ErrorCode::StageOrderViolation, "no simplification yet"), s->state->stage);
  }
  const json& views = snaps.at(key).at("views");
  if (!views.contains(std::string(to_string(v)))) throw Error(ErrorCode::NotFound, "view not simplified");
  return views.at(std::string(to_string(v))).at("scatter");
}

void SessionManager::evict(const std::string& id) {
  auto s = slot(id);
  std::lock_guard lock(s->mutex);
  s->state.reset();
  s->store.reset();
  s->backends.reset();
}

}  // namespace iconix
