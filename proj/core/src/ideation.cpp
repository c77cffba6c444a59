#include "iconix/ideation.hpp"

#include <algorithm>
#include <map>

namespace iconix {

namespace {

// The scale spans are 4, 6, 6 and 8, so every normalized value is an exact
// multiple of 1/24. Summing in those units keeps equal aggregates equal.
constexpr int kUnitsPerScale = 24;

int units(int v, ScoreScale scale) { return (v - scale.min) * (kUnitsPerScale / (scale.max - scale.min)); }

}  // namespace

double aggregate_score(const AttributeScores& s) {
  const int total = units(s.concreteness, kConcretenessScale) + units(s.familiarity, kFamiliarityScale) +
                    units(s.imageability, kImageabilityScale) + units(s.meaningfulness, kMeaningfulnessScale);
  return static_cast<double>(total) / (4.0 * kUnitsPerScale);
}

std::vector<CandidateEntry> filter_constraints(std::vector<CandidateEntry> pool) {
  std::erase_if(pool, [](const CandidateEntry& e) { return e.category != Category::ConcreteObject; });
  return pool;
}

bool passes_thresholds(const AttributeScores& s) {
  return s.concreteness >= 4 && s.familiarity >= 5 && s.imageability >= 5 && s.meaningfulness >= 6;
}

std::vector<CandidateEntry> threshold_filter(std::vector<CandidateEntry> pool) {
  std::erase_if(pool, [](const CandidateEntry& e) { return !passes_thresholds(e.scores); });
  return pool;
}

std::vector<CandidateEntry> aggregate_rank(std::vector<CandidateEntry> pool) {
  for (CandidateEntry& e : pool) e.aggregate = aggregate_score(e.scores);
  std::sort(pool.begin(), pool.end(), [](const CandidateEntry& a, const CandidateEntry& b) {
    if (a.aggregate != b.aggregate) return a.aggregate > b.aggregate;
    return a.term.label < b.term.label;
  });
  return pool;
}

std::set<std::string> top_labels(const std::vector<CandidateEntry>& ranked, std::size_t n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < ranked.size() && i < n; ++i) out.insert(ranked[i].term.label);
  return out;
}

IdeationState run_ideation(const Concept& input, ConceptExpander& expander, AttributeScorer& scorer,
                           int max_iterations) {
  if (max_iterations < 1) throw Error(ErrorCode::InvalidConfig, "max_iterations must be at least 1");
  IdeationState state;
  state.input = input;
  state.input.label = normalize_label(input.label);

  // Every label ever returned, scored once; insertion order kept for stable
  // pre-sort ordering.
  std::vector<CandidateEntry> scored;
  std::set<std::string> known;

  while (state.iteration < max_iterations) {
    std::vector<CandidateEntry> fresh;
    try {
      Expansion expansion = expander.expand(state.input, known);
      state.warnings.insert(state.warnings.end(), expansion.warnings.begin(), expansion.warnings.end());
      for (Concept& c : expansion.concepts) {
        c.label = normalize_label(c.label);
        if (c.label.empty() || c.label == state.input.label || !known.insert(c.label).second) continue;
        ScoreResult r = scorer.score(c, state.input);
        if (r.clamped) state.warnings.push_back("scores for '" + c.label + "' were clamped into range");
        fresh.push_back(CandidateEntry{std::move(c), std::move(r.interpretation), r.scores, r.category,
                                       aggregate_score(r.scores)});
      }
    } catch (const Error& e) {
      throw IdeationError(e.code(), e.what(), state);
    }
    scored.insert(scored.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));

    state.pool = aggregate_rank(threshold_filter(filter_constraints(scored)));
    state.top5_history.push_back(top_labels(state.pool));
    ++state.iteration;

    const auto n = state.top5_history.size();
    if (n >= 2 && state.top5_history[n - 1] == state.top5_history[n - 2]) break;
  }
  if (state.pool.empty()) {
    throw IdeationError(ErrorCode::EmptyPool, "no candidate for '" + state.input.label + "' survived filtering",
                        state);
  }
  return state;
}

nlohmann::json candidate_table_json(const std::vector<CandidateEntry>& ranked) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const CandidateEntry& e = ranked[i];
    out.push_back({{"label", e.term.label},
                   {"gloss", e.term.gloss},
                   {"source", to_string(e.term.source)},
                   {"interpretation", e.interpretation},
                   {"scores",
                    {{"c", e.scores.concreteness},
                     {"f", e.scores.familiarity},
                     {"i", e.scores.imageability},
                     {"m", e.scores.meaningfulness}}},
                   {"category", to_string(e.category)},
                   {"aggregate", e.aggregate},
                   {"rank", i + 1}});
  }
  return out;
}

std::vector<CandidateEntry> candidate_table_from_json(const nlohmann::json& table) {
  std::vector<CandidateEntry> out;
  try {
    for (const auto& row : table) {
      CandidateEntry e;
      e.term = make_concept(row.at("label").get<std::string>(),
                               parse_concept_source(row.value("source", std::string("User"))).value_or(ConceptSource::User),
                               row.value("gloss", std::string()));
      e.interpretation = row.value("interpretation", std::string());
      const auto& s = row.at("scores");
      e.scores = AttributeScores{s.at("c").get<int>(), s.at("f").get<int>(), s.at("i").get<int>(), s.at("m").get<int>()};
      e.category = parse_category(row.value("category", std::string("ConcreteObject"))).value_or(Category::ConcreteObject);
      e.aggregate = aggregate_score(e.scores);
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::CorruptStore, std::string("bad candidate table: ") + ex.what());
  }
  return out;
}

nlohmann::json ideation_state_json(const IdeationState& state) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& set : state.top5_history) history.push_back(set);
  return {{"input", state.input.label},
          {"iteration", state.iteration},
          {"top5_history", history},
          {"warnings", state.warnings},
          {"candidates", candidate_table_json(state.pool)}};
}

}  // namespace iconix
