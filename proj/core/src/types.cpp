#include "iconix/types.hpp"

#include <algorithm>
#include <cctype>

namespace iconix {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view s, const std::array<Enum, N>& values) {
  for (Enum v : values) {
    if (iequals(s, to_string(v))) return v;
  }
  return std::nullopt;
}

int clamp_to(int v, ScoreScale scale, bool& changed) {
  const int c = std::clamp(v, scale.min, scale.max);
  if (c != v) changed = true;
  return c;
}

bool within(int v, ScoreScale scale) { return v >= scale.min && v <= scale.max; }

}  // namespace

std::string normalize_label(std::string_view label) {
  auto first = label.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = label.find_last_not_of(" \t\r\n");
  std::string out(label.substr(first, last - first + 1));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Concept make_concept(std::string_view label, ConceptSource source, std::string gloss) {
  return Concept{normalize_label(label), std::move(gloss), source};
}

bool in_range(const AttributeScores& s) {
  return within(s.concreteness, kConcretenessScale) && within(s.familiarity, kFamiliarityScale) &&
         within(s.imageability, kImageabilityScale) && within(s.meaningfulness, kMeaningfulnessScale);
}

AttributeScores clamp_scores(const AttributeScores& s, bool* changed) {
  bool moved = false;
  AttributeScores out{clamp_to(s.concreteness, kConcretenessScale, moved),
                      clamp_to(s.familiarity, kFamiliarityScale, moved),
                      clamp_to(s.imageability, kImageabilityScale, moved),
                      clamp_to(s.meaningfulness, kMeaningfulnessScale, moved)};
  if (changed != nullptr) *changed = moved;
  return out;
}

std::string_view to_string(ConceptSource v) {
  switch (v) {
    case ConceptSource::KnowledgeBase: return "KnowledgeBase";
    case ConceptSource::LanguageModel: return "LanguageModel";
    case ConceptSource::User: return "User";
  }
  return "User";
}

std::string_view to_string(Category v) {
  switch (v) {
    case Category::ConcreteObject: return "ConcreteObject";
    case Category::AbstractNoun: return "AbstractNoun";
    case Category::SuperordinateCategory: return "SuperordinateCategory";
    case Category::IntangibleAction: return "IntangibleAction";
  }
  return "ConcreteObject";
}

std::string_view to_string(RelationKind v) {
  switch (v) {
    case RelationKind::Hypernym: return "Hypernym";
    case RelationKind::Hyponym: return "Hyponym";
    case RelationKind::Synonym: return "Synonym";
    case RelationKind::KindOf: return "KindOf";
    case RelationKind::InstanceOf: return "InstanceOf";
    case RelationKind::PartOf: return "PartOf";
    case RelationKind::AttributeOf: return "AttributeOf";
    case RelationKind::UsedFor: return "UsedFor";
    case RelationKind::AtLocation: return "AtLocation";
    case RelationKind::RelatedTo: return "RelatedTo";
    case RelationKind::SymbolOf: return "SymbolOf";
    case RelationKind::SimilarTo: return "SimilarTo";
  }
  return "RelatedTo";
}

std::string_view to_string(KbSource v) {
  switch (v) {
    case KbSource::ConceptNet: return "ConceptNet";
    case KbSource::Lexicon: return "Lexicon";
    case KbSource::Wikidata: return "Wikidata";
  }
  return "ConceptNet";
}

std::string_view to_string(Dimension v) {
  switch (v) {
    case Dimension::Taxonomic: return "Taxonomic";
    case Dimension::Constitutive: return "Constitutive";
    case Dimension::Associative: return "Associative";
  }
  return "Associative";
}

std::string_view to_string(View v) {
  switch (v) {
    case View::Comparative: return "comparative";
    case View::Microscopic: return "microscopic";
    case View::Macroscopic: return "macroscopic";
  }
  return "comparative";
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Outline: return "outline";
    case Variant::Filled: return "filled";
    case Variant::Color: return "color";
  }
  return "outline";
}

std::optional<ConceptSource> parse_concept_source(std::string_view s) {
  return parse_enum(s, std::array{ConceptSource::KnowledgeBase, ConceptSource::LanguageModel, ConceptSource::User});
}

std::optional<Category> parse_category(std::string_view s) {
  return parse_enum(s, std::array{Category::ConcreteObject, Category::AbstractNoun,
                                  Category::SuperordinateCategory, Category::IntangibleAction});
}

std::optional<RelationKind> parse_relation_kind(std::string_view s) {
  return parse_enum(s, kAllRelationKinds);
}

std::optional<KbSource> parse_kb_source(std::string_view s) {
  return parse_enum(s, std::array{KbSource::ConceptNet, KbSource::Lexicon, KbSource::Wikidata});
}

std::optional<View> parse_view(std::string_view s) { return parse_enum(s, kAllViews); }

std::optional<Variant> parse_variant(std::string_view s) { return parse_enum(s, kAllVariants); }

}  // namespace iconix
