#include <algorithm>
#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "iconix/backends.hpp"
#include "iconix/codec.hpp"
#include "iconix/error.hpp"
#include "iconix/imaging.hpp"

namespace iconix {

namespace {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

struct Ellipse {
  double cx, cy, rx, ry;
  bool contains(double x, double y) const {
    const double dx = (x - cx) / rx;
    const double dy = (y - cy) / ry;
    return dx * dx + dy * dy <= 1.0;
  }
};

void paint(Raster& img, const Ellipse& e, const Color& color) {
  const int x0 = std::max(0, static_cast<int>(std::floor(e.cx - e.rx)));
  const int x1 = std::min(img.width() - 1, static_cast<int>(std::ceil(e.cx + e.rx)));
  const int y0 = std::max(0, static_cast<int>(std::floor(e.cy - e.ry)));
  const int y1 = std::min(img.height() - 1, static_cast<int>(std::ceil(e.cy + e.ry)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (e.contains(x + 0.5, y + 0.5)) img.set_color(x, y, color);
    }
  }
}

void paint_stroke(Raster& img, double x0, double y0, double x1, double y1, double half_width,
                  const Color& color) {
  const double len = std::hypot(x1 - x0, y1 - y0);
  const int steps = std::max(1, static_cast<int>(std::ceil(len * 2)));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    paint(img, Ellipse{x0 + t * (x1 - x0), y0 + t * (y1 - y0), half_width, half_width}, color);
  }
}

int luma_of(const Color& c) { return (299 * c[0] + 587 * c[1] + 114 * c[2] + 500) / 1000; }

Color random_color(SplitMix64& rng, int lo, int hi) {
  return Color{static_cast<std::uint8_t>(rng.integer(lo, hi)), static_cast<std::uint8_t>(rng.integer(lo, hi)),
               static_cast<std::uint8_t>(rng.integer(lo, hi)), 255};
}

std::uint8_t quantize8(std::uint8_t v) {
  const int level = (v * 7 + 127) / 255;
  return static_cast<std::uint8_t>((level * 255 + 3) / 7);
}

std::uint8_t nearest_level(double v, const std::vector<std::uint8_t>& levels) {
  std::uint8_t best = levels.front();
  double best_d = std::abs(v - best);
  for (std::uint8_t l : levels) {
    const double d = std::abs(v - l);
    if (d < best_d) {  // ties keep the darker level
      best = l;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

Raster MockGenerator::generate(const std::string& prompt, const std::optional<Raster>& condition) {
  std::uint64_t seed = fnv1a64(prompt);
  std::optional<Color> inherited;
  if (condition) {
    const std::uint8_t dims[] = {static_cast<std::uint8_t>(condition->width() & 0xFF),
                                 static_cast<std::uint8_t>(condition->height() & 0xFF),
                                 static_cast<std::uint8_t>(condition->channel_count())};
    seed = fnv1a64(condition->data(), fnv1a64(dims, seed));
    const Color center = condition->color_at(condition->width() / 2, condition->height() / 2);
    if (luma_of(center) < 110) inherited = center;
  }
  SplitMix64 rng(seed);
  const double s = size_;
  Raster img(size_, size_, Channels::Rgba8, 255);

  const Color body_color = inherited.value_or(random_color(rng, 20, 100));
  const Ellipse body{s / 2 + rng.uniform(-s / 16, s / 16), s / 2 + rng.uniform(-s / 16, s / 16),
                     rng.uniform(0.2, 0.28) * s, rng.uniform(0.2, 0.28) * s};
  paint(img, body, body_color);

  // Light details inside the body.
  const int inner = rng.integer(2, 4);
  for (int i = 0; i < inner; ++i) {
    const double angle = rng.uniform(0, 2 * M_PI);
    const double reach = rng.uniform(0.0, 0.45);
    const Ellipse e{body.cx + std::cos(angle) * reach * body.rx, body.cy + std::sin(angle) * reach * body.ry,
                    rng.uniform(0.08, 0.22) * body.rx, rng.uniform(0.08, 0.22) * body.ry};
    paint(img, e, random_color(rng, 170, 245));
  }

  // A dark stroke leaving the body.
  {
    const double angle = rng.uniform(0, 2 * M_PI);
    const double x0 = body.cx + std::cos(angle) * body.rx * 0.9;
    const double y0 = body.cy + std::sin(angle) * body.ry * 0.9;
    const double len = rng.uniform(0.08, 0.14) * s;
    paint_stroke(img, x0, y0, x0 + std::cos(angle) * len, y0 + std::sin(angle) * len, std::max(1.0, s / 96),
                 body_color);
  }

  // Detached satellites.
  const int satellites = rng.integer(2, 5);
  for (int i = 0; i < satellites; ++i) {
    const double r = rng.uniform(0.02, 0.055) * s;
    for (int attempt = 0; attempt < 32; ++attempt) {
      const double x = rng.uniform(r + 2, s - r - 2);
      const double y = rng.uniform(r + 2, s - r - 2);
      const double dx = (x - body.cx) / (body.rx + r + 0.08 * s);
      const double dy = (y - body.cy) / (body.ry + r + 0.08 * s);
      if (dx * dx + dy * dy > 1.0) {
        paint(img, Ellipse{x, y, r, r}, random_color(rng, 10, 90));
        break;
      }
    }
  }
  return img;
}

double ReferenceSimplifier::sigma_at(int step_index) const {
  return std::min(params_.sigma_base + params_.sigma_per_step * step_index, params_.sigma_max);
}

Raster ReferenceSimplifier::step(const Raster& frame, int step_index) const {
  Raster gray = to_gray(frame);
  std::array<bool, 256> present{};
  for (std::uint8_t v : gray.data()) present[quantize8(v)] = true;
  std::vector<std::uint8_t> levels;
  for (int v = 0; v < 256; ++v) {
    if (present[static_cast<std::size_t>(v)]) levels.push_back(static_cast<std::uint8_t>(v));
  }
  Raster blurred = gaussian_blur(gray, sigma_at(step_index));
  for (std::uint8_t& v : blurred.data()) v = nearest_level(v, levels);
  return max_filter3(min_filter3(blurred));
}

std::vector<Raster> ReferenceSimplifier::simplify(const Raster& img, int step_count, int first_step) {
  if (step_count < 1) throw Error(ErrorCode::InvalidConfig, "step_count must be at least 1");
  std::vector<Raster> frames;
  frames.reserve(static_cast<std::size_t>(step_count));
  const Raster* previous = &img;
  for (int i = 0; i < step_count; ++i) {
    frames.push_back(step(*previous, first_step + i));
    previous = &frames.back();
  }
  return frames;
}

std::vector<BinaryMask> MockSegmenter::segment(const Raster& img) {
  const BinaryMask fg = binarize(img, kDefaultThreshold);
  const Components cc = connected_components(fg, Connectivity::Eight);
  std::vector<BinaryMask> masks(static_cast<std::size_t>(cc.count), BinaryMask(img.width(), img.height()));
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::int32_t label =
          cc.labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) + static_cast<std::size_t>(x)];
      if (label > 0) masks[static_cast<std::size_t>(label - 1)].set(x, y);
    }
  }
  return masks;
}

ScoreResult MockScorer::score(const Concept& candidate, const Concept& base) {
  const auto& table = fixtures::scores();
  if (auto it = table.find(normalize_label(candidate.label)); it != table.end()) {
    return ScoreResult{it->second.scores, it->second.interpretation, it->second.category, false};
  }
  return ScoreResult{AttributeScores{3, 4, 4, 5},
                     "a " + candidate.label + " has no recorded association with " + base.label,
                     Category::ConcreteObject, false};
}

Expansion FixtureConceptSource::expand(const Concept& input, const std::set<std::string>& known) {
  const auto& table = fixtures::expansions();
  Expansion out;
  std::set<std::string> emitted;
  auto take = [&](const std::string& seed) {
    auto it = table.find(seed);
    if (it == table.end()) return;
    const auto& list = source_ == ConceptSource::KnowledgeBase ? it->second.knowledge_base
                                                                : it->second.language_model;
    for (const char* label : list) {
      std::string norm = normalize_label(label);
      if (known.contains(norm) || norm == input.label || !emitted.insert(norm).second) continue;
      out.concepts.push_back(Concept{norm, "related to " + seed, source_});
    }
  };
  take(normalize_label(input.label));
  for (const std::string& k : known) take(k);
  return out;
}

Expansion MergingExpander::expand(const Concept& input, const std::set<std::string>& known) {
  Expansion out;
  std::set<std::string> seen;
  std::size_t failures = 0;
  std::string last_error;
  for (const auto& source : sources_) {
    try {
      Expansion part = source->expand(input, known);
      for (Concept& c : part.concepts) {
        c.label = normalize_label(c.label);
        if (c.label.empty() || known.contains(c.label) || !seen.insert(c.label).second) continue;
        out.concepts.push_back(std::move(c));
      }
      out.warnings.insert(out.warnings.end(), part.warnings.begin(), part.warnings.end());
    } catch (const Error& e) {
      if (!is_backend_error(e.code())) throw;
      ++failures;
      last_error = e.what();
      out.warnings.push_back("expansion source failed: " + last_error);
    }
  }
  if (!sources_.empty() && failures == sources_.size()) {
    throw Error(ErrorCode::BackendUnavailable, "all expansion sources failed: " + last_error);
  }
  return out;
}

std::vector<SemanticRelation> MockRelationSource::relations(const Concept& center) {
  std::vector<SemanticRelation> out;
  const auto& table = fixtures::relations();
  auto it = table.find(normalize_label(center.label));
  if (it == table.end()) return out;
  for (const auto& f : it->second) {
    if (auto kind = map_relation_name(f.name)) {
      out.push_back(SemanticRelation{center.label, *kind, f.object, f.source, f.weight});
    }
  }
  return out;
}

FeatureVector ReferenceFeatures::extract(const Raster& img) {
  const Raster thumb = downsample(to_gray(img), kMetricSide, kMetricSide);
  FeatureVector out;
  out.values.reserve(thumb.data().size());
  for (std::uint8_t v : thumb.data()) out.values.push_back(v / 255.0);
  return out;
}

double ReferencePerceptual::distance(const Raster& a, const Raster& b) {
  return reference_perceptual_distance(a, b);
}

Raster MockRestyler::restyle(const Raster& img, Variant variant) {
  const BinaryMask fg = binarize(img, kDefaultThreshold);
  switch (variant) {
    case Variant::Outline:
      return mask_to_raster(boundary(fg));
    case Variant::Filled:
      return mask_to_raster(fill_holes(fg));
    case Variant::Color: {
      static constexpr std::array<Color, 8> kPalette{{{230, 57, 70, 255},
                                                      {29, 53, 87, 255},
                                                      {42, 157, 143, 255},
                                                      {233, 196, 106, 255},
                                                      {244, 162, 97, 255},
                                                      {69, 123, 157, 255},
                                                      {131, 56, 236, 255},
                                                      {6, 214, 160, 255}}};
      const Color color = kPalette[fnv1a64(img.data()) % kPalette.size()];
      const BinaryMask silhouette = fill_holes(fg);
      Raster out(img.width(), img.height(), Channels::Rgba8, 255);
      for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
          if (silhouette.get(x, y)) out.set_color(x, y, color);
        }
      }
      return out;
    }
  }
  throw Error(ErrorCode::InvalidConfig, "unknown style variant");
}

std::optional<RelationKind> map_relation_name(std::string_view name) {
  static const std::map<std::string, RelationKind, std::less<>> table{
      // ConceptNet 5
      {"/r/IsA", RelationKind::KindOf},
      {"/r/PartOf", RelationKind::PartOf},
      {"/r/HasA", RelationKind::PartOf},
      {"/r/HasProperty", RelationKind::AttributeOf},
      {"/r/UsedFor", RelationKind::UsedFor},
      {"/r/AtLocation", RelationKind::AtLocation},
      {"/r/RelatedTo", RelationKind::RelatedTo},
      {"/r/SymbolOf", RelationKind::SymbolOf},
      {"/r/Synonym", RelationKind::Synonym},
      {"/r/SimilarTo", RelationKind::SimilarTo},
      {"/r/InstanceOf", RelationKind::InstanceOf},
      // WordNet
      {"hypernym", RelationKind::Hypernym},
      {"hyponym", RelationKind::Hyponym},
      {"synonym", RelationKind::Synonym},
      {"meronym", RelationKind::PartOf},
      {"attribute", RelationKind::AttributeOf},
      // Wikidata
      {"P31", RelationKind::InstanceOf},
      {"P279", RelationKind::KindOf},
      {"P527", RelationKind::PartOf},
  };
  if (auto it = table.find(name); it != table.end()) return it->second;
  return parse_relation_kind(name);
}

}  // namespace iconix
