#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/raster.hpp"
#include "iconix/types.hpp"

// Every model-backed step reaches its model through one of these roles. Each
// role has a deterministic in-process implementation (mock or reference) and a
// JSON-over-HTTP client; see wire.hpp for the protocol.
namespace iconix {

enum class BackendKind { Generate, Simplify, Segment, Score, Expand, Features, Perceptual, Restyle };
inline constexpr std::array<BackendKind, 8> kAllBackendKinds{
    BackendKind::Generate, BackendKind::Simplify, BackendKind::Segment,  BackendKind::Score,
    BackendKind::Expand,   BackendKind::Features, BackendKind::Perceptual, BackendKind::Restyle};

enum class BackendMode { Remote, Mock };

std::string_view to_string(BackendKind kind);  // lowercase path segment
std::string_view to_string(BackendMode mode);

struct BackendEndpoint {
  BackendKind kind = BackendKind::Generate;
  std::string url;
  double timeout_secs = 30.0;
  BackendMode mode = BackendMode::Mock;

  // Remote endpoints need a url; throws InvalidConfig.
  void validate() const;
};

// Reads ICONIX_{KIND}_URL, ICONIX_{KIND}_MODE and ICONIX_TIMEOUT_SECS. A kind
// with a url and no explicit mode is Remote; `force_mock` overrides all.
std::vector<BackendEndpoint> endpoints_from_env(bool force_mock);

nlohmann::json endpoints_to_json(const std::vector<BackendEndpoint>& endpoints);
std::vector<BackendEndpoint> endpoints_from_json(const nlohmann::json& j);

class ImageGenerator {
 public:
  virtual ~ImageGenerator() = default;
  virtual Raster generate(const std::string& prompt, const std::optional<Raster>& condition) = 0;
};

class Simplifier {
 public:
  virtual ~Simplifier() = default;
  // Frames for steps first_step .. first_step + step_count - 1, each derived
  // from the previous one (the first from `img`).
  virtual std::vector<Raster> simplify(const Raster& img, int step_count, int first_step) = 0;
};

class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual std::vector<BinaryMask> segment(const Raster& img) = 0;
};

struct ScoreResult {
  AttributeScores scores;
  std::string interpretation;
  Category category = Category::ConcreteObject;
  bool clamped = false;
};

class AttributeScorer {
 public:
  virtual ~AttributeScorer() = default;
  virtual ScoreResult score(const Concept& candidate, const Concept& base) = 0;
};

struct Expansion {
  std::vector<Concept> concepts;
  std::vector<std::string> warnings;
};

class ConceptExpander {
 public:
  virtual ~ConceptExpander() = default;
  // Concepts related to `input` (and to the already-known labels), excluding
  // anything in `known`.
  virtual Expansion expand(const Concept& input, const std::set<std::string>& known) = 0;
};

class RelationSource {
 public:
  virtual ~RelationSource() = default;
  virtual std::vector<SemanticRelation> relations(const Concept& center) = 0;
};

class FeatureExtractor {
 public:
  virtual ~FeatureExtractor() = default;
  virtual FeatureVector extract(const Raster& img) = 0;
};

class PerceptualMetric {
 public:
  virtual ~PerceptualMetric() = default;
  virtual double distance(const Raster& a, const Raster& b) = 0;
};

class Restyler {
 public:
  virtual ~Restyler() = default;
  virtual Raster restyle(const Raster& img, Variant variant) = 0;
};

struct BackendSet {
  std::shared_ptr<ImageGenerator> generator;
  std::shared_ptr<Simplifier> simplifier;
  std::shared_ptr<Segmenter> segmenter;
  std::shared_ptr<AttributeScorer> scorer;
  std::shared_ptr<ConceptExpander> expander;
  std::shared_ptr<RelationSource> relations;
  std::shared_ptr<FeatureExtractor> features;
  std::shared_ptr<PerceptualMetric> perceptual;
  std::shared_ptr<Restyler> restyler;
};

struct MockOptions {
  int image_size = 128;
};

BackendSet make_mock_backends(const MockOptions& options = {});
BackendSet make_backends(const std::vector<BackendEndpoint>& endpoints, const MockOptions& options = {});

// --- mock and reference implementations ---

// Procedural shapes seeded by hash(prompt || condition bytes); a condition
// image passes its body color on to the next exemplar.
class MockGenerator final : public ImageGenerator {
 public:
  explicit MockGenerator(int size = 128) : size_(size) {}
  Raster generate(const std::string& prompt, const std::optional<Raster>& condition) override;

 private:
  int size_;
};

struct ReferenceSimplifierParams {
  double sigma_base = 0.6;
  double sigma_per_step = 0.08;
  double sigma_max = 3.0;
};

// Gaussian blur with a growing sigma, snap to the previous frame's gray levels
// (at most 8), then a 3x3 closing of the dark foreground. Output is Gray8.
class ReferenceSimplifier final : public Simplifier {
 public:
  explicit ReferenceSimplifier(ReferenceSimplifierParams params = {}) : params_(params) {}
  std::vector<Raster> simplify(const Raster& img, int step_count, int first_step) override;
  Raster step(const Raster& frame, int step_index) const;
  double sigma_at(int step_index) const;

 private:
  ReferenceSimplifierParams params_;
};

// One mask per 8-connected component of binarize(img, 128).
class MockSegmenter final : public Segmenter {
 public:
  std::vector<BinaryMask> segment(const Raster& img) override;
};

// Fixture table; unknown labels score (3,4,4,5) as a concrete object.
class MockScorer final : public AttributeScorer {
 public:
  ScoreResult score(const Concept& candidate, const Concept& base) override;
};

// Fixture lookup for one source kind.
class FixtureConceptSource final : public ConceptExpander {
 public:
  explicit FixtureConceptSource(ConceptSource source) : source_(source) {}
  Expansion expand(const Concept& input, const std::set<std::string>& known) override;

 private:
  ConceptSource source_;
};

// Merges several sources; a failing source degrades to a warning unless all
// of them fail.
class MergingExpander final : public ConceptExpander {
 public:
  explicit MergingExpander(std::vector<std::shared_ptr<ConceptExpander>> sources)
      : sources_(std::move(sources)) {}
  Expansion expand(const Concept& input, const std::set<std::string>& known) override;

 private:
  std::vector<std::shared_ptr<ConceptExpander>> sources_;
};

class MockRelationSource final : public RelationSource {
 public:
  std::vector<SemanticRelation> relations(const Concept& center) override;
};

// 32x32 grayscale thumbnail flattened to 1024 values in [0,1].
class ReferenceFeatures final : public FeatureExtractor {
 public:
  FeatureVector extract(const Raster& img) override;
};

class ReferencePerceptual final : public PerceptualMetric {
 public:
  double distance(const Raster& a, const Raster& b) override;
};

// Outline = boundary of the binarized image, Filled = hole-filled silhouette,
// Color = silhouette in a palette color keyed by the image hash.
class MockRestyler final : public Restyler {
 public:
  Raster restyle(const Raster& img, Variant variant) override;
};

// Maps a knowledge-base relation name (ConceptNet "/r/IsA", WordNet
// "hypernym", Wikidata "P31", or an enum name) to a relation kind.
std::optional<RelationKind> map_relation_name(std::string_view name);

}  // namespace iconix
