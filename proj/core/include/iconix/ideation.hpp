#pragma once

#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/backends.hpp"
#include "iconix/error.hpp"
#include "iconix/types.hpp"

namespace iconix {

inline constexpr int kDefaultMaxIterations = 5;
inline constexpr std::size_t kTopSetSize = 5;

struct CandidateEntry {
  Concept term;
  std::string interpretation;
  AttributeScores scores;
  Category category = Category::ConcreteObject;
  double aggregate = 0.0;
};

struct IdeationState {
  Concept input;
  int iteration = 0;
  std::vector<CandidateEntry> pool;  // ranked, filtered
  std::vector<std::set<std::string>> top5_history;
  std::vector<std::string> warnings;
};

// Equal-weight mean of the four attributes, each min-max normalized over its
// own scale.
double aggregate_score(const AttributeScores& s);

// Keeps only concrete objects, in order.
std::vector<CandidateEntry> filter_constraints(std::vector<CandidateEntry> pool);

// concreteness >= 4, familiarity >= 5, imageability >= 5, meaningfulness >= 6.
bool passes_thresholds(const AttributeScores& s);
std::vector<CandidateEntry> threshold_filter(std::vector<CandidateEntry> pool);

// Recomputes aggregates and sorts by aggregate descending, label ascending.
std::vector<CandidateEntry> aggregate_rank(std::vector<CandidateEntry> pool);

std::set<std::string> top_labels(const std::vector<CandidateEntry>& ranked, std::size_t n = kTopSetSize);

// Raised when a backend fails mid-run or nothing survives filtering; carries
// the state as of the last completed iteration.
class IdeationError : public Error {
 public:
  IdeationError(ErrorCode code, const std::string& message, IdeationState state)
      : Error(code, message), state_(std::move(state)) {}
  const IdeationState& state() const noexcept { return state_; }

 private:
  IdeationState state_;
};

// Expand, score unseen labels (each label is scored once), filter, threshold,
// rank; stop when the top-5 label set repeats or after max_iterations.
IdeationState run_ideation(const Concept& input, ConceptExpander& expander, AttributeScorer& scorer,
                           int max_iterations = kDefaultMaxIterations);

// [{label, gloss, interpretation, scores:{c,f,i,m}, aggregate, rank, category}]
nlohmann::json candidate_table_json(const std::vector<CandidateEntry>& ranked);
std::vector<CandidateEntry> candidate_table_from_json(const nlohmann::json& table);
nlohmann::json ideation_state_json(const IdeationState& state);

}  // namespace iconix
