#include "iconix/backends.hpp"

#include <cstdlib>

#include "iconix/error.hpp"
#include "iconix/wire.hpp"

namespace iconix {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Generate: return "generate";
    case BackendKind::Simplify: return "simplify";
    case BackendKind::Segment: return "segment";
    case BackendKind::Score: return "score";
    case BackendKind::Expand: return "expand";
    case BackendKind::Features: return "features";
    case BackendKind::Perceptual: return "perceptual";
    case BackendKind::Restyle: return "restyle";
  }
  return "generate";
}

std::string_view to_string(BackendMode mode) { return mode == BackendMode::Remote ? "remote" : "mock"; }

void BackendEndpoint::validate() const {
  if (mode == BackendMode::Remote && url.empty()) {
    throw Error(ErrorCode::InvalidConfig, "remote " + std::string(to_string(kind)) + " endpoint has no url");
  }
  if (!(timeout_secs > 0)) throw Error(ErrorCode::InvalidConfig, "backend timeout must be positive");
}

namespace {

std::string env_or(const std::string& name, const std::string& fallback = {}) {
  const char* v = std::getenv(name.c_str());
  return v == nullptr ? fallback : std::string(v);
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::optional<BackendKind> parse_kind(std::string_view s) {
  for (BackendKind k : kAllBackendKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

}  // namespace

std::vector<BackendEndpoint> endpoints_from_env(bool force_mock) {
  double timeout = 30.0;
  if (const std::string t = env_or("ICONIX_TIMEOUT_SECS"); !t.empty()) {
    try {
      timeout = std::stod(t);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "ICONIX_TIMEOUT_SECS is not a number");
    }
  }
  std::vector<BackendEndpoint> out;
  for (BackendKind kind : kAllBackendKinds) {
    const std::string prefix = "ICONIX_" + upper(to_string(kind));
    BackendEndpoint ep;
    ep.kind = kind;
    ep.url = env_or(prefix + "_URL");
    ep.timeout_secs = timeout;
    const std::string mode = env_or(prefix + "_MODE");
    if (force_mock) {
      ep.mode = BackendMode::Mock;
    } else if (mode == "remote") {
      ep.mode = BackendMode::Remote;
    } else if (mode == "mock") {
      ep.mode = BackendMode::Mock;
    } else if (mode.empty()) {
      ep.mode = ep.url.empty() ? BackendMode::Mock : BackendMode::Remote;
    } else {
      throw Error(ErrorCode::InvalidConfig, prefix + "_MODE must be 'remote' or 'mock'");
    }
    ep.validate();
    out.push_back(std::move(ep));
  }
  return out;
}

nlohmann::json endpoints_to_json(const std::vector<BackendEndpoint>& endpoints) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& ep : endpoints) {
    out[std::string(to_string(ep.kind))] = {
        {"mode", to_string(ep.mode)}, {"url", ep.url}, {"timeout_secs", ep.timeout_secs}};
  }
  return out;
}

std::vector<BackendEndpoint> endpoints_from_json(const nlohmann::json& j) {
  std::vector<BackendEndpoint> out;
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "backends must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto kind = parse_kind(it.key());
    if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown backend kind '" + it.key() + "'");
    BackendEndpoint ep;
    ep.kind = *kind;
    try {
      const std::string mode = it.value().value("mode", std::string("mock"));
      if (mode != "mock" && mode != "remote") throw Error(ErrorCode::InvalidConfig, "bad backend mode");
      ep.mode = mode == "remote" ? BackendMode::Remote : BackendMode::Mock;
      ep.url = it.value().value("url", std::string());
      ep.timeout_secs = it.value().value("timeout_secs", 30.0);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidConfig, std::string("bad backend entry: ") + e.what());
    }
    ep.validate();
    out.push_back(std::move(ep));
  }
  return out;
}

BackendSet make_mock_backends(const MockOptions& options) {
  BackendSet set;
  set.generator = std::make_shared<MockGenerator>(options.image_size);
  set.simplifier = std::make_shared<ReferenceSimplifier>();
  set.segmenter = std::make_shared<MockSegmenter>();
  set.scorer = std::make_shared<MockScorer>();
  set.expander = std::make_shared<MergingExpander>(std::vector<std::shared_ptr<ConceptExpander>>{
      std::make_shared<FixtureConceptSource>(ConceptSource::KnowledgeBase),
      std::make_shared<FixtureConceptSource>(ConceptSource::LanguageModel)});
  set.relations = std::make_shared<MockRelationSource>();
  set.features = std::make_shared<ReferenceFeatures>();
  set.perceptual = std::make_shared<ReferencePerceptual>();
  set.restyler = std::make_shared<MockRestyler>();
  return set;
}

BackendSet make_backends(const std::vector<BackendEndpoint>& endpoints, const MockOptions& options) {
  BackendSet set = make_mock_backends(options);
  for (const BackendEndpoint& ep : endpoints) {
    ep.validate();
    if (ep.mode == BackendMode::Mock) continue;
    switch (ep.kind) {
      case BackendKind::Generate: set.generator = std::make_shared<RemoteGenerator>(ep); break;
      case BackendKind::Simplify: set.simplifier = std::make_shared<RemoteSimplifier>(ep); break;
      case BackendKind::Segment: set.segmenter = std::make_shared<RemoteSegmenter>(ep); break;
      case BackendKind::Score: set.scorer = std::make_shared<RemoteScorer>(ep); break;
      case BackendKind::Expand: {
        auto remote = std::make_shared<RemoteExpander>(ep);
        set.expander = remote;
        set.relations = remote;
        break;
      }
      case BackendKind::Features: set.features = std::make_shared<RemoteFeatures>(ep); break;
      case BackendKind::Perceptual: set.perceptual = std::make_shared<RemotePerceptual>(ep); break;
      case BackendKind::Restyle: set.restyler = std::make_shared<RemoteRestyler>(ep); break;
    }
  }
  return set;
}

}  // namespace iconix
