#include "iconix/wire.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "iconix/codec.hpp"
#include "iconix/error.hpp"

namespace iconix {

using nlohmann::json;

namespace {

std::string image_field(const Raster& img) { return base64_encode(encode_png(img)); }

Raster image_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(ErrorCode::MalformedResponse, std::string("missing image field '") + key + "'");
  }
  return decode_png(base64_decode(j.at(key).get<std::string>()));
}

template <typename Fn>
auto guard_payload(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("unexpected payload: ") + e.what());
  }
}

AttributeScores scores_from(const json& j) {
  return AttributeScores{j.at("c").get<int>(), j.at("f").get<int>(), j.at("i").get<int>(), j.at("m").get<int>()};
}

json scores_to(const AttributeScores& s) {
  return {{"c", s.concreteness}, {"f", s.familiarity}, {"i", s.imageability}, {"m", s.meaningfulness}};
}

}  // namespace

WireClient::WireClient(BackendEndpoint endpoint) : endpoint_(std::move(endpoint)) { endpoint_.validate(); }

json WireClient::call(const json& body) const {
  json request = body;
  request["v"] = kWireVersion;

  httplib::Client client(endpoint_.url);
  const auto timeout = std::chrono::duration<double>(endpoint_.timeout_secs);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout).count();
  client.set_connection_timeout(usec / 1000000, usec % 1000000);
  client.set_read_timeout(usec / 1000000, usec % 1000000);
  client.set_write_timeout(usec / 1000000, usec % 1000000);

  const std::string path = "/v1/" + std::string(to_string(endpoint_.kind));
  const auto started = std::chrono::steady_clock::now();
  auto result = client.Post(path, request.dump(), "application/json");
  const auto elapsed = std::chrono::steady_clock::now() - started;
  if (!result) {
    const auto err = result.error();
    const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                           (err == httplib::Error::Read && elapsed >= timeout * 0.9);
    throw Error(timed_out ? ErrorCode::BackendTimeout : ErrorCode::BackendUnavailable,
                endpoint_.url + path + ": " + httplib::to_string(err));
  }
  if (result->status != 200) {
    throw Error(ErrorCode::BackendUnavailable,
                endpoint_.url + path + ": HTTP " + std::to_string(result->status));
  }
  json response = json::parse(result->body, nullptr, false);
  if (response.is_discarded() || !response.is_object() || !response.contains("ok")) {
    throw Error(ErrorCode::MalformedResponse, endpoint_.url + path + ": response is not a protocol envelope");
  }
  if (!response.at("ok").get<bool>()) {
    throw Error(ErrorCode::BackendUnavailable,
                endpoint_.url + path + ": " + response.value("error", std::string("backend error")));
  }
  if (!response.contains("payload") || !response.at("payload").is_object()) {
    throw Error(ErrorCode::MalformedResponse, endpoint_.url + path + ": missing payload");
  }
  return response.at("payload");
}

Raster RemoteGenerator::generate(const std::string& prompt, const std::optional<Raster>& condition) {
  json body{{"prompt", prompt}};
  if (condition) body["condition"] = image_field(*condition);
  const json payload = client_.call(body);
  return image_from(payload, "image");
}

std::vector<Raster> RemoteSimplifier::simplify(const Raster& img, int step_count, int first_step) {
  const json payload = client_.call({{"image", image_field(img)}, {"steps", step_count}, {"first_step", first_step}});
  return guard_payload([&] {
    std::vector<Raster> frames;
    for (const auto& f : payload.at("frames")) frames.push_back(decode_png(base64_decode(f.get<std::string>())));
    if (frames.size() != static_cast<std::size_t>(step_count)) {
      throw Error(ErrorCode::MalformedResponse, "simplify returned the wrong number of frames");
    }
    for (const Raster& f : frames) {
      if (!f.same_size(img)) throw Error(ErrorCode::MalformedResponse, "simplify changed frame dimensions");
    }
    return frames;
  });
}

std::vector<BinaryMask> RemoteSegmenter::segment(const Raster& img) {
  const json payload = client_.call({{"image", image_field(img)}});
  return guard_payload([&] {
    std::vector<BinaryMask> masks;
    for (const auto& m : payload.at("masks")) {
      masks.push_back(decode_mask_png(base64_decode(m.get<std::string>())));
      if (!masks.back().same_size(img)) throw Error(ErrorCode::MalformedResponse, "mask size differs from image");
    }
    return masks;
  });
}

ScoreResult RemoteScorer::score(const Concept& candidate, const Concept& base) {
  const json payload = client_.call({{"candidate", candidate.label}, {"base", base.label}});
  return guard_payload([&] {
    ScoreResult out;
    out.scores = clamp_scores(scores_from(payload.at("scores")), &out.clamped);
    out.interpretation = payload.at("interpretation").get<std::string>();
    auto category = parse_category(payload.at("category").get<std::string>());
    if (!category) throw Error(ErrorCode::MalformedResponse, "unknown category");
    out.category = *category;
    return out;
  });
}

Expansion RemoteExpander::expand(const Concept& input, const std::set<std::string>& known) {
  const json payload = client_.call({{"input", input.label}, {"known", known}});
  return guard_payload([&] {
    Expansion out;
    for (const auto& c : payload.at("concepts")) {
      Concept term = make_concept(c.at("label").get<std::string>(),
                                     parse_concept_source(c.value("source", std::string("LanguageModel")))
                                         .value_or(ConceptSource::LanguageModel),
                                     c.value("gloss", std::string()));
      if (term.label.empty() || known.contains(term.label)) continue;
      out.concepts.push_back(std::move(term));
    }
    if (payload.contains("warnings")) out.warnings = payload.at("warnings").get<std::vector<std::string>>();
    return out;
  });
}

std::vector<SemanticRelation> RemoteExpander::relations(const Concept& center) {
  const json payload = client_.call({{"relations_of", center.label}});
  return guard_payload([&] {
    std::vector<SemanticRelation> out;
    for (const auto& r : payload.at("relations")) {
      auto kind = map_relation_name(r.at("relation").get<std::string>());
      if (!kind) continue;
      out.push_back(SemanticRelation{center.label, *kind, normalize_label(r.at("object").get<std::string>()),
                                     parse_kb_source(r.value("source", std::string("ConceptNet")))
                                         .value_or(KbSource::ConceptNet),
                                     r.value("weight", 1.0)});
    }
    return out;
  });
}

FeatureVector RemoteFeatures::extract(const Raster& img) {
  const json payload = client_.call({{"image", image_field(img)}});
  return guard_payload([&] {
    FeatureVector out{payload.at("values").get<std::vector<double>>()};
    if (out.values.empty()) throw Error(ErrorCode::MalformedResponse, "empty feature vector");
    for (double v : out.values) {
      if (!std::isfinite(v)) throw Error(ErrorCode::MalformedResponse, "non-finite feature value");
    }
    return out;
  });
}

double RemotePerceptual::distance(const Raster& a, const Raster& b) {
  const json payload = client_.call({{"a", image_field(a)}, {"b", image_field(b)}});
  return guard_payload([&] {
    const double d = payload.at("distance").get<double>();
    if (!std::isfinite(d) || d < 0) throw Error(ErrorCode::MalformedResponse, "invalid distance");
    return d;
  });
}

Raster RemoteRestyler::restyle(const Raster& img, Variant variant) {
  const json payload = client_.call({{"image", image_field(img)}, {"variant", to_string(variant)}});
  return image_from(payload, "image");
}

struct BackendServer::Impl {
  BackendSet backends;
  httplib::Server server;
  std::thread thread;
  std::string host;
  int port = 0;
};

BackendServer::BackendServer(BackendSet backends) : impl_(std::make_unique<Impl>()) {
  impl_->backends = std::move(backends);
  for (BackendKind kind : kAllBackendKinds) {
    const std::string path = "/v1/" + std::string(to_string(kind));
    impl_->server.Post(path, [this, kind](const httplib::Request& req, httplib::Response& res) {
      json envelope;
      json body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        res.status = 400;
        envelope = {{"ok", false}, {"error", "request body is not a JSON object"}};
      } else if (body.value("v", 0) != kWireVersion) {
        res.status = 400;
        envelope = {{"ok", false}, {"error", "unsupported protocol version"}};
      } else {
        try {
          envelope = {{"ok", true}, {"payload", handle(kind, body)}};
        } catch (const std::exception& e) {
          envelope = {{"ok", false}, {"error", e.what()}};
        }
      }
      res.set_content(envelope.dump(), "application/json");
    });
  }
}

BackendServer::~BackendServer() { stop(); }

json BackendServer::handle(BackendKind kind, const json& body) {
  BackendSet& b = impl_->backends;
  return guard_payload([&]() -> json {
    switch (kind) {
      case BackendKind::Generate: {
        std::optional<Raster> condition;
        if (body.contains("condition")) condition = image_from(body, "condition");
        return {{"image", image_field(b.generator->generate(body.at("prompt").get<std::string>(), condition))}};
      }
      case BackendKind::Simplify: {
        json frames = json::array();
        for (const Raster& f : b.simplifier->simplify(image_from(body, "image"), body.at("steps").get<int>(),
                                                      body.value("first_step", 1))) {
          frames.push_back(image_field(f));
        }
        return {{"frames", frames}};
      }
      case BackendKind::Segment: {
        json masks = json::array();
        for (const BinaryMask& m : b.segmenter->segment(image_from(body, "image"))) {
          masks.push_back(base64_encode(encode_mask_png(m)));
        }
        return {{"masks", masks}};
      }
      case BackendKind::Score: {
        const ScoreResult r = b.scorer->score(make_concept(body.at("candidate").get<std::string>()),
                                              make_concept(body.at("base").get<std::string>()));
        return {{"scores", scores_to(r.scores)},
                {"interpretation", r.interpretation},
                {"category", to_string(r.category)}};
      }
      case BackendKind::Expand: {
        if (body.contains("relations_of")) {
          json relations = json::array();
          for (const SemanticRelation& r :
               b.relations->relations(make_concept(body.at("relations_of").get<std::string>()))) {
            relations.push_back({{"relation", to_string(r.relation)},
                                 {"object", r.object},
                                 {"weight", r.weight},
                                 {"source", to_string(r.source)}});
          }
          return {{"relations", relations}};
        }
        const auto known = body.value("known", std::set<std::string>{});
        const Expansion e = b.expander->expand(make_concept(body.at("input").get<std::string>()), known);
        json concepts = json::array();
        for (const Concept& c : e.concepts) {
          concepts.push_back({{"label", c.label}, {"gloss", c.gloss}, {"source", to_string(c.source)}});
        }
        return {{"concepts", concepts}, {"warnings", e.warnings}};
      }
      case BackendKind::Features:
        return {{"values", b.features->extract(image_from(body, "image")).values}};
      case BackendKind::Perceptual:
        return {{"distance", b.perceptual->distance(image_from(body, "a"), image_from(body, "b"))}};
      case BackendKind::Restyle: {
        auto variant = parse_variant(body.at("variant").get<std::string>());
        if (!variant) throw Error(ErrorCode::MalformedResponse, "unknown variant");
        return {{"image", image_field(b.restyler->restyle(image_from(body, "image"), *variant))}};
      }
    }
    throw Error(ErrorCode::MalformedResponse, "unknown backend kind");
  });
}

int BackendServer::start(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (impl_->port < 0) throw Error(ErrorCode::Io, "cannot bind backend server to " + host);
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void BackendServer::listen(const std::string& host, int port) {
  impl_->host = host;
  impl_->port = port;
  if (!impl_->server.listen(host, port)) throw Error(ErrorCode::Io, "cannot listen on " + host);
}

void BackendServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string BackendServer::url() const {
  return "http://" + impl_->host + ":" + std::to_string(impl_->port);
}

}  // namespace iconix
