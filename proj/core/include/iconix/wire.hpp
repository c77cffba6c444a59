#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "iconix/backends.hpp"

// JSON-over-HTTP backend protocol, version 1.
//
//   POST {url}/v1/{kind}   body {"v":1, ...}
//   200  {"ok":true, "payload":{...}}  or  {"ok":false, "error":"..."}
//
// Images travel as base64 PNG strings, masks as base64 1-bit PNG.
//
//   generate    {prompt, condition?}              -> {image}
//   simplify    {image, steps, first_step}        -> {frames:[image]}
//   segment     {image}                           -> {masks:[mask]}
//   score       {candidate, base}                 -> {scores:{c,f,i,m}, interpretation, category}
//   expand      {input, known:[label]}            -> {concepts:[{label,gloss,source}], warnings?}
//   expand      {relations_of}                    -> {relations:[{relation,object,weight,source}]}
//   features    {image}                           -> {values:[number]}
//   perceptual  {a, b}                            -> {distance}
//   restyle     {image, variant}                  -> {image}
namespace iconix {

inline constexpr int kWireVersion = 1;

// Sends one request; maps transport failures to BackendUnavailable or
// BackendTimeout and bad payloads to MalformedResponse.
class WireClient {
 public:
  explicit WireClient(BackendEndpoint endpoint);
  nlohmann::json call(const nlohmann::json& body) const;
  const BackendEndpoint& endpoint() const { return endpoint_; }

 private:
  BackendEndpoint endpoint_;
};

class RemoteGenerator final : public ImageGenerator {
 public:
  explicit RemoteGenerator(BackendEndpoint ep) : client_(std::move(ep)) {}
  Raster generate(const std::string& prompt, const std::optional<Raster>& condition) override;

 private:
  WireClient client_;
};

class RemoteSimplifier final : public Simplifier {
 public:
  explicit RemoteSimplifier(BackendEndpoint ep) : client_(std::move(ep)) {}
  std::vector<Raster> simplify(const Raster& img, int step_count, int first_step) override;

 private:
  WireClient client_;
};

class RemoteSegmenter final : public Segmenter {
 public:
  explicit RemoteSegmenter(BackendEndpoint ep) : client_(std::move(ep)) {}
  std::vector<BinaryMask> segment(const Raster& img) override;

 private:
  WireClient client_;
};

class RemoteScorer final : public AttributeScorer {
 public:
  explicit RemoteScorer(BackendEndpoint ep) : client_(std::move(ep)) {}
  // Out-of-range scores are clamped and reported through `clamped`.
  ScoreResult score(const Concept& candidate, const Concept& base) override;

 private:
  WireClient client_;
};

class RemoteExpander final : public ConceptExpander, public RelationSource {
 public:
  explicit RemoteExpander(BackendEndpoint ep) : client_(std::move(ep)) {}
  Expansion expand(const Concept& input, const std::set<std::string>& known) override;
  std::vector<SemanticRelation> relations(const Concept& center) override;

 private:
  WireClient client_;
};

class RemoteFeatures final : public FeatureExtractor {
 public:
  explicit RemoteFeatures(BackendEndpoint ep) : client_(std::move(ep)) {}
  FeatureVector extract(const Raster& img) override;

 private:
  WireClient client_;
};

class RemotePerceptual final : public PerceptualMetric {
 public:
  explicit RemotePerceptual(BackendEndpoint ep) : client_(std::move(ep)) {}
  double distance(const Raster& a, const Raster& b) override;

 private:
  WireClient client_;
};

class RemoteRestyler final : public Restyler {
 public:
  explicit RemoteRestyler(BackendEndpoint ep) : client_(std::move(ep)) {}
  Raster restyle(const Raster& img, Variant variant) override;

 private:
  WireClient client_;
};

// Serves a BackendSet over the wire protocol; used to host the mock backends
// out of process and by the protocol tests.
class BackendServer {
 public:
  explicit BackendServer(BackendSet backends);
  ~BackendServer();
  BackendServer(const BackendServer&) = delete;
  BackendServer& operator=(const BackendServer&) = delete;

  // Binds (port 0 = any free port) and serves on a background thread.
  int start(const std::string& host = "127.0.0.1", int port = 0);
  // Blocks in the calling thread.
  void listen(const std::string& host, int port);
  void stop();
  std::string url() const;

  // Dispatches one decoded request; exposed for in-process tests.
  nlohmann::json handle(BackendKind kind, const nlohmann::json& body);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace iconix
