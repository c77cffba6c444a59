#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace iconix {

enum class ConceptSource { KnowledgeBase, LanguageModel, User };

struct Concept {
  std::string label;  // lowercase, trimmed
  std::string gloss;
  ConceptSource source = ConceptSource::User;
};

// Lowercases and trims; the canonical form used for label comparison.
std::string normalize_label(std::string_view label);
Concept make_concept(std::string_view label, ConceptSource source = ConceptSource::User,
                     std::string gloss = {});

struct AttributeScores {
  int concreteness = 1;    // 1-5
  int familiarity = 1;     // 1-7
  int imageability = 1;    // 1-7
  int meaningfulness = 1;  // 1-9

  friend bool operator==(const AttributeScores&, const AttributeScores&) = default;
};

struct ScoreScale {
  int min;
  int max;
};
inline constexpr ScoreScale kConcretenessScale{1, 5};
inline constexpr ScoreScale kFamiliarityScale{1, 7};
inline constexpr ScoreScale kImageabilityScale{1, 7};
inline constexpr ScoreScale kMeaningfulnessScale{1, 9};

bool in_range(const AttributeScores& s);
// Returns the clamped copy; `changed` reports whether any field moved.
AttributeScores clamp_scores(const AttributeScores& s, bool* changed = nullptr);

enum class Category { ConcreteObject, AbstractNoun, SuperordinateCategory, IntangibleAction };

enum class RelationKind {
  Hypernym,
  Hyponym,
  Synonym,
  KindOf,
  InstanceOf,
  PartOf,
  AttributeOf,
  UsedFor,
  AtLocation,
  RelatedTo,
  SymbolOf,
  SimilarTo,
};
inline constexpr std::array<RelationKind, 12> kAllRelationKinds{
    RelationKind::Hypernym,   RelationKind::Hyponym,     RelationKind::Synonym,
    RelationKind::KindOf,     RelationKind::InstanceOf,  RelationKind::PartOf,
    RelationKind::AttributeOf, RelationKind::UsedFor,    RelationKind::AtLocation,
    RelationKind::RelatedTo,  RelationKind::SymbolOf,    RelationKind::SimilarTo,
};

enum class KbSource { ConceptNet, Lexicon, Wikidata };

struct SemanticRelation {
  std::string subject;
  RelationKind relation = RelationKind::RelatedTo;
  std::string object;
  KbSource source = KbSource::ConceptNet;
  double weight = 0.0;
};

enum class Dimension { Taxonomic, Constitutive, Associative };

// Chain order: Comparative conditions Microscopic, which conditions Macroscopic.
enum class View { Comparative, Microscopic, Macroscopic };
inline constexpr std::array<View, 3> kAllViews{View::Comparative, View::Microscopic, View::Macroscopic};

enum class Variant { Outline, Filled, Color };
inline constexpr std::array<Variant, 3> kAllVariants{Variant::Outline, Variant::Filled, Variant::Color};

struct FeatureVector {
  std::vector<double> values;
};

std::string_view to_string(ConceptSource v);
std::string_view to_string(Category v);
std::string_view to_string(RelationKind v);
std::string_view to_string(KbSource v);
std::string_view to_string(Dimension v);
std::string_view to_string(View v);
std::string_view to_string(Variant v);

// Parsers accept the names printed by to_string (case-insensitive); nullopt
// for anything else.
std::optional<ConceptSource> parse_concept_source(std::string_view s);
std::optional<Category> parse_category(std::string_view s);
std::optional<RelationKind> parse_relation_kind(std::string_view s);
std::optional<KbSource> parse_kb_source(std::string_view s);
std::optional<View> parse_view(std::string_view s);
std::optional<Variant> parse_variant(std::string_view s);

}  // namespace iconix
