#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/backends.hpp"
#include "iconix/error.hpp"
#include "iconix/types.hpp"

namespace iconix {

inline constexpr std::size_t kBucketCap = 12;

Dimension classify_relation(RelationKind kind);

// The bucket a view draws its relations from.
Dimension dimension_for(View view);

struct Scaffold {
  Concept center;
  std::vector<SemanticRelation> taxonomic;
  std::vector<SemanticRelation> constitutive;
  std::vector<SemanticRelation> associative;

  const std::vector<SemanticRelation>& bucket(Dimension d) const;
};

// Dedup by (relation, object) keeping the max weight, bucket, sort by weight
// descending then object, truncate to `cap`. Throws SubjectMismatch.
Scaffold build_scaffold(const Concept& center, const std::vector<SemanticRelation>& relations,
                        std::size_t cap = kBucketCap);

// Per-view relation choices, indexed by View.
using ViewSelections = std::array<std::vector<SemanticRelation>, 3>;

// The first `n` relations of each bucket (buckets are weight-sorted).
ViewSelections top_selections(const Scaffold& scaffold, std::size_t n = 3);

struct PromptStep {
  View view;
  std::string prompt;
  std::vector<SemanticRelation> selected_relations;
  std::optional<int> conditions_on;
};

struct PromptChain {
  std::array<PromptStep, 3> steps;
};

// Throws SelectionOutOfBucket when a selection is not in its view's bucket.
PromptChain build_prompt_chain(const Scaffold& scaffold, const ViewSelections& selections);

struct Exemplar {
  View view;
  Raster image;
};

struct ExemplarChainResult {
  std::vector<Exemplar> exemplars;  // in chain order, up to the failure
  std::optional<int> failed_step;
  std::optional<ErrorCode> error_code;
  std::string error_message;

  bool complete() const { return !failed_step.has_value(); }
};

// Step 0 from its prompt alone; later steps conditioned on the previous image.
ExemplarChainResult generate_exemplar_chain(const PromptChain& chain, ImageGenerator& generator);

nlohmann::json relation_json(const SemanticRelation& r);
nlohmann::json scaffold_json(const Scaffold& scaffold);
Scaffold scaffold_from_json(const nlohmann::json& j);
nlohmann::json prompt_chain_json(const PromptChain& chain);

// Parses {comparative:[{relation, object}], ...}; unknown views or relation
// names are InvalidConfig.
ViewSelections selections_from_json(const Scaffold& scaffold, const nlohmann::json& j);

}  // namespace iconix
