#include "iconix/scaffold.hpp"

#include <algorithm>
#include <map>

namespace iconix {

Dimension classify_relation(RelationKind kind) {
  switch (kind) {
    case RelationKind::Hypernym:
    case RelationKind::Hyponym:
    case RelationKind::Synonym:
    case RelationKind::KindOf:
    case RelationKind::InstanceOf:
      return Dimension::Taxonomic;
    case RelationKind::PartOf:
    case RelationKind::AttributeOf:
      return Dimension::Constitutive;
    case RelationKind::UsedFor:
    case RelationKind::AtLocation:
    case RelationKind::RelatedTo:
    case RelationKind::SymbolOf:
    case RelationKind::SimilarTo:
      return Dimension::Associative;
  }
  return Dimension::Associative;
}

Dimension dimension_for(View view) {
  switch (view) {
    case View::Comparative: return Dimension::Taxonomic;
    case View::Microscopic: return Dimension::Constitutive;
    case View::Macroscopic: return Dimension::Associative;
  }
  return Dimension::Taxonomic;
}

const std::vector<SemanticRelation>& Scaffold::bucket(Dimension d) const {
  switch (d) {
    case Dimension::Taxonomic: return taxonomic;
    case Dimension::Constitutive: return constitutive;
    case Dimension::Associative: return associative;
  }
  return associative;
}

Scaffold build_scaffold(const Concept& center, const std::vector<SemanticRelation>& relations, std::size_t cap) {
  Scaffold out;
  out.center = center;
  out.center.label = normalize_label(center.label);

  std::map<std::pair<RelationKind, std::string>, SemanticRelation> unique;
  for (const SemanticRelation& r : relations) {
    if (normalize_label(r.subject) != out.center.label) {
      throw Error(ErrorCode::SubjectMismatch,
                  "relation subject '" + r.subject + "' is not '" + out.center.label + "'");
    }
    SemanticRelation norm = r;
    norm.subject = out.center.label;
    norm.object = normalize_label(r.object);
    if (norm.object.empty() || norm.object == norm.subject) continue;
    auto key = std::make_pair(norm.relation, norm.object);
    auto [it, inserted] = unique.try_emplace(key, norm);
    if (!inserted && norm.weight > it->second.weight) it->second = norm;
  }

  for (auto& [key, r] : unique) {
    switch (classify_relation(r.relation)) {
      case Dimension::Taxonomic: out.taxonomic.push_back(r); break;
      case Dimension::Constitutive: out.constitutive.push_back(r); break;
      case Dimension::Associative: out.associative.push_back(r); break;
    }
  }
  for (auto* bucket : {&out.taxonomic, &out.constitutive, &out.associative}) {
    std::stable_sort(bucket->begin(), bucket->end(), [](const SemanticRelation& a, const SemanticRelation& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.object < b.object;
    });
    if (bucket->size() > cap) bucket->resize(cap);
  }
  return out;
}

ViewSelections top_selections(const Scaffold& scaffold, std::size_t n) {
  ViewSelections out;
  for (View v : kAllViews) {
    const auto& bucket = scaffold.bucket(dimension_for(v));
    out[static_cast<std::size_t>(v)].assign(bucket.begin(), bucket.begin() + static_cast<std::ptrdiff_t>(std::min(n, bucket.size())));
  }
  return out;
}

namespace {

std::string join_objects(const std::vector<SemanticRelation>& rs) {
  std::string out;
  for (const auto& r : rs) {
    if (!out.empty()) out += ", ";
    out += r.object;
  }
  return out;
}

std::string render_prompt(View view, const std::string& center, const std::vector<SemanticRelation>& selected) {
  std::string prompt = "a clean icon-style illustration of " + center;
  if (selected.empty()) return prompt;
  switch (view) {
    case View::Comparative: return prompt + "; compare with related kinds: " + join_objects(selected);
    case View::Microscopic: return prompt + "; depict parts: " + join_objects(selected);
    case View::Macroscopic: return prompt + "; set in context: " + join_objects(selected);
  }
  return prompt;
}

bool in_bucket(const std::vector<SemanticRelation>& bucket, const SemanticRelation& r) {
  const std::string object = normalize_label(r.object);
  return std::any_of(bucket.begin(), bucket.end(), [&](const SemanticRelation& b) {
    return b.relation == r.relation && b.object == object;
  });
}

}  // namespace

PromptChain build_prompt_chain(const Scaffold& scaffold, const ViewSelections& selections) {
  PromptChain chain;
  for (std::size_t i = 0; i < kAllViews.size(); ++i) {
    const View view = kAllViews[i];
    const auto& bucket = scaffold.bucket(dimension_for(view));
    std::vector<SemanticRelation> chosen;
    for (const SemanticRelation& r : selections[i]) {
      if (!in_bucket(bucket, r)) {
        throw Error(ErrorCode::SelectionOutOfBucket,
                    std::string(to_string(r.relation)) + " '" + r.object + "' is not in the " +
                        std::string(to_string(dimension_for(view))) + " bucket used by the " +
                        std::string(to_string(view)) + " view");
      }
      SemanticRelation copy = r;
      copy.object = normalize_label(r.object);
      chosen.push_back(std::move(copy));
    }
    PromptStep& step = chain.steps[i];
    step.view = view;
    step.prompt = render_prompt(view, scaffold.center.label, chosen);
    step.selected_relations = std::move(chosen);
    if (i > 0) step.conditions_on = static_cast<int>(i) - 1;
  }
  return chain;
}

ExemplarChainResult generate_exemplar_chain(const PromptChain& chain, ImageGenerator& generator) {
  ExemplarChainResult out;
  std::optional<Raster> previous;
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const PromptStep& step = chain.steps[i];
    try {
      std::optional<Raster> condition;
      if (step.conditions_on) condition = out.exemplars.at(static_cast<std::size_t>(*step.conditions_on)).image;
      out.exemplars.push_back(Exemplar{step.view, generator.generate(step.prompt, condition)});
    } catch (const Error& e) {
      if (!is_backend_error(e.code())) throw;
      out.failed_step = static_cast<int>(i);
      out.error_code = e.code();
      out.error_message = e.what();
      break;
    }
  }
  return out;
}

nlohmann::json relation_json(const SemanticRelation& r) {
  return {{"relation", to_string(r.relation)}, {"object", r.object}, {"weight", r.weight}, {"source", to_string(r.source)}};
}

nlohmann::json scaffold_json(const Scaffold& scaffold) {
  auto bucket = [](const std::vector<SemanticRelation>& rs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rs) out.push_back(relation_json(r));
    return out;
  };
  return {{"center", scaffold.center.label},
          {"taxonomic", bucket(scaffold.taxonomic)},
          {"constitutive", bucket(scaffold.constitutive)},
          {"associative", bucket(scaffold.associative)}};
}

Scaffold scaffold_from_json(const nlohmann::json& j) {
  try {
    Scaffold out;
    out.center = make_concept(j.at("center").get<std::string>());
    auto read = [&](const char* key, std::vector<SemanticRelation>& into) {
      for (const auto& r : j.at(key)) {
        auto kind = parse_relation_kind(r.at("relation").get<std::string>());
        auto source = parse_kb_source(r.at("source").get<std::string>());
        if (!kind || !source) throw Error(ErrorCode::CorruptStore, "bad relation in scaffold");
        into.push_back(SemanticRelation{out.center.label, *kind, r.at("object").get<std::string>(), *source,
                                        r.at("weight").get<double>()});
      }
    };
    read("taxonomic", out.taxonomic);
    read("constitutive", out.constitutive);
    read("associative", out.associative);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptStore, std::string("bad scaffold json: ") + e.what());
  }
}

nlohmann::json prompt_chain_json(const PromptChain& chain) {
  nlohmann::json steps = nlohmann::json::array();
  for (const PromptStep& s : chain.steps) {
    nlohmann::json selected = nlohmann::json::array();
    for (const auto& r : s.selected_relations) selected.push_back(relation_json(r));
    steps.push_back({{"view", to_string(s.view)},
                     {"prompt", s.prompt},
                     {"selected_relations", selected},
                     {"conditions_on", s.conditions_on ? nlohmann::json(*s.conditions_on) : nlohmann::json(nullptr)}});
  }
  return {{"steps", steps}};
}

ViewSelections selections_from_json(const Scaffold& scaffold, const nlohmann::json& j) {
  ViewSelections out;
  if (j.is_null()) return out;
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "selections must be an object keyed by view");
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto view = parse_view(it.key());
    if (!view) throw Error(ErrorCode::InvalidConfig, "unknown view '" + it.key() + "'");
    if (!it.value().is_array()) throw Error(ErrorCode::InvalidConfig, "selections for a view must be a list");
    for (const auto& item : it.value()) {
      if (!item.is_object() || !item.contains("relation") || !item.contains("object")) {
        throw Error(ErrorCode::InvalidConfig, "selection entries need relation and object");
      }
      auto kind = parse_relation_kind(item.at("relation").get<std::string>());
      if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown relation kind");
      out[static_cast<std::size_t>(*view)].push_back(SemanticRelation{
          scaffold.center.label, *kind, normalize_label(item.at("object").get<std::string>()), KbSource::ConceptNet, 0.0});
    }
  }
  // Fill source/weight from the scaffold so the chain records what was chosen.
  for (View v : kAllViews) {
    for (auto& sel : out[static_cast<std::size_t>(v)]) {
      for (const Dimension d : {Dimension::Taxonomic, Dimension::Constitutive, Dimension::Associative}) {
        for (const auto& r : scaffold.bucket(d)) {
          if (r.relation == sel.relation && r.object == sel.object) {
            sel.source = r.source;
            sel.weight = r.weight;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace iconix
