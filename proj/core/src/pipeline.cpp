#include "iconix/pipeline.hpp"

#include <algorithm>
#include <set>

#include "iconix/error.hpp"
#include "iconix/ideation.hpp"
#include "iconix/layering.hpp"
#include "iconix/scaffold.hpp"
#include "iconix/selection.hpp"
#include "iconix/simplification.hpp"

namespace iconix {

using nlohmann::json;

namespace {

std::string view_key(View v) { return std::string(to_string(v)); }

void require_role(const void* role, std::string_view name) {
  if (role == nullptr) throw Error(ErrorCode::InvalidConfig, "no backend configured for " + std::string(name));
}

const json& require_field(const json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::InvalidConfig, std::string(what) + " is missing '" + key + "'");
  }
  return j.at(key);
}

}  // namespace

View require_view(const std::string& name) {
  const auto v = parse_view(name);
  if (!v) throw Error(ErrorCode::InvalidConfig, "unknown view '" + name + "'");
  return *v;
}

std::set<Variant> parse_variant_list(const json& names) {
  if (!names.is_array() || names.empty()) {
    throw Error(ErrorCode::InvalidConfig, "variants must be a non-empty list");
  }
  std::set<Variant> out;
  for (const auto& n : names) {
    const auto v = n.is_string() ? parse_variant(n.get<std::string>()) : std::nullopt;
    if (!v) throw Error(ErrorCode::InvalidConfig, "unknown variant " + n.dump());
    out.insert(*v);
  }
  return out;
}

Pipeline::Pipeline(Config config, BackendSet backends, ArtifactStore& store)
    : config_(std::move(config)), backends_(std::move(backends)), store_(store) {
  config_.validate();
}

json Pipeline::ideate(const std::string& concept_label) const {
  require_role(backends_.expander.get(), "expand");
  require_role(backends_.scorer.get(), "score");
  const Concept input = make_concept(concept_label);
  if (input.label.empty()) throw Error(ErrorCode::InvalidConfig, "concept must not be empty");
  const IdeationState state = run_ideation(input, *backends_.expander, *backends_.scorer, config_.max_iterations);
  return ideation_state_json(state);
}

json Pipeline::scaffold(const json& ideated, const std::string& candidate_label) const {
  require_role(backends_.relations.get(), "relations");
  const std::string label = normalize_label(candidate_label);
  const auto& table = require_field(ideated, "candidates", "ideation snapshot");
  const bool listed = std::any_of(table.begin(), table.end(),
                                  [&](const json& row) { return row.value("label", std::string()) == label; });
  if (!listed) throw Error(ErrorCode::InvalidConfig, "'" + label + "' is not in the candidate table");
  const Concept center = make_concept(label);
  const Scaffold s =
      build_scaffold(center, backends_.relations->relations(center), static_cast<std::size_t>(config_.bucket_cap));
  return {{"candidate", label}, {"scaffold", scaffold_json(s)}};
}

json Pipeline::exemplars(const json& scaffolded, const json& request) const {
  require_role(backends_.generator.get(), "generate");
  const Scaffold s = scaffold_from_json(require_field(scaffolded, "scaffold", "scaffold snapshot"));
  const bool has_request = request.is_object();
  ViewSelections selections = has_request && request.contains("selections")
                                  ? selections_from_json(s, request.at("selections"))
                                  : top_selections(s, static_cast<std::size_t>(config_.selections_per_view));
  PromptChain chain = build_prompt_chain(s, selections);
  if (has_request && request.contains("prompt_edits")) {
    const json& edits = request.at("prompt_edits");
    if (!edits.is_object()) throw Error(ErrorCode::InvalidConfig, "prompt_edits must be an object");
    for (const auto& [name, text] : edits.items()) {
      if (!text.is_string() || text.get<std::string>().empty()) {
        throw Error(ErrorCode::InvalidConfig, "prompt edit for '" + name + "' must be a non-empty string");
      }
      chain.steps[static_cast<std::size_t>(require_view(name))].prompt = text.get<std::string>();
    }
  }
  const ExemplarChainResult result = generate_exemplar_chain(chain, *backends_.generator);
  if (!result.complete()) {
    throw Error(result.error_code.value_or(ErrorCode::BackendUnavailable), result.error_message);
  }
  json exemplars = json::array();
  for (const Exemplar& e : result.exemplars) {
    exemplars.push_back({{"view", to_string(e.view)}, {"ref", store_.put_raster(e.image)}});
  }
  return {{"prompt_chain", prompt_chain_json(chain)}, {"exemplars", exemplars}};
}

json Pipeline::simplify(const json& exemplars, const json& request, const json& previous) const {
  require_role(backends_.simplifier.get(), "simplify");
  require_role(backends_.perceptual.get(), "perceptual");
  require_role(backends_.features.get(), "features");
  require_role(backends_.segmenter.get(), "segment");

  std::set<View> wanted(kAllViews.begin(), kAllViews.end());
  if (request.is_object() && request.contains("exemplar_views")) {
    const json& names = request.at("exemplar_views");
    if (!names.is_array() || names.empty()) throw Error(ErrorCode::InvalidConfig, "exemplar_views must be a list");
    wanted.clear();
    for (const auto& n : names) wanted.insert(require_view(n.get<std::string>()));
  }

  json views = json::object();
  if (previous.is_object() && previous.contains("views")) views = previous.at("views");
  for (const auto& e : require_field(exemplars, "exemplars", "exemplar snapshot")) {
    const View view = require_view(e.at("view").get<std::string>());
    if (!wanted.contains(view)) continue;
    const Raster source = store_.get_raster(e.at("ref").get<std::string>());

    const SimplificationSequence seq =
        run_simplification(source, *backends_.simplifier, *backends_.perceptual, config_.simplification);
    if (seq.error_code) throw Error(*seq.error_code, view_key(view) + " simplification: " + seq.error_message);

    std::vector<FeatureVector> features;
    features.reserve(seq.frames.size());
    for (const Frame& f : seq.frames) features.push_back(backends_.features->extract(f.image));
    const ClusteringResult clusters = select_representatives(seq, features, config_.k, config_.seed);
    const json scatter = features.size() >= 2 ? scatter_json(export_scatter(clusters, features))
                                              : json{{"points", json::array()},
                                                     {"centroids", json::array()},
                                                     {"degenerate", true}};

    json reps = json::array();
    for (int index : clusters.representatives) {
      const Frame& frame = seq.frames[static_cast<std::size_t>(index)];
      const LayeredIcon icon = build_layered_icon(frame.image, *backends_.segmenter, config_.alpha);
      reps.push_back({{"frame", index},
                      {"step", frame.step},
                      {"cluster", clusters.assignments[static_cast<std::size_t>(index)]},
                      {"composite_ref", store_.put_raster(icon.composite)},
                      {"layers_ref", store_.put_json(layer_manifest(icon, store_.sink()))}});
    }
    views[view_key(view)] = {{"sequence", sequence_manifest(seq, store_.sink())},
                             {"clustering", clustering_json(clusters)},
                             {"scatter", scatter},
                             {"representatives", reps}};
  }
  return {{"views", views}};
}

json Pipeline::grid(const json& simplified, const json& request, const std::string& concept_label) const {
  require_role(backends_.restyler.get(), "restyle");
  require_role(backends_.segmenter.get(), "segment");
  const bool has_request = request.is_object();
  int columns = config_.columns;
  if (has_request && request.contains("columns")) {
    if (!request.at("columns").is_number_integer()) throw Error(ErrorCode::InvalidConfig, "columns must be an integer");
    columns = request.at("columns").get<int>();
  }
  if (columns < 1 || columns > kMaxColumns) throw Error(ErrorCode::InvalidConfig, "columns must be 1-9");
  std::optional<GridPicks> picks;
  std::set<View> picked;
  if (has_request && request.contains("picks") && !request.at("picks").is_null()) {
    const json& p = request.at("picks");
    if (!p.is_object()) throw Error(ErrorCode::InvalidConfig, "picks must map views to step lists");
    picks.emplace();
    for (const auto& [name, steps] : p.items()) {
      if (!steps.is_array()) throw Error(ErrorCode::InvalidConfig, "picks for '" + name + "' must be a list");
      const View view = require_view(name);
      try {
        (*picks)[static_cast<std::size_t>(view)] = steps.get<std::vector<int>>();
      } catch (const json::exception&) {
        throw Error(ErrorCode::InvalidConfig, "picks for '" + name + "' must be integer steps");
      }
      picked.insert(view);
    }
  }

  const json& views = require_field(simplified, "views", "simplification snapshot");
  RowSources sources;
  for (View view : kAllViews) {
    auto& row = sources[static_cast<std::size_t>(view)];
    if (!views.contains(view_key(view))) continue;
    const json& v = views.at(view_key(view));
    for (const auto& r : v.at("representatives")) {
      const Raster composite = store_.get_raster(r.at("composite_ref").get<std::string>());
      row.push_back(RepresentativeIcon{r.at("step").get<int>(), LayeredIcon{composite, {}, composite, false},
                                       r.at("layers_ref").get<std::string>()});
    }
    // Rows the request leaves out keep the evenly spaced default.
    if (picks && !picked.contains(view)) {
      auto& steps = (*picks)[static_cast<std::size_t>(view)];
      for (int rank : default_pick_ranks(static_cast<int>(row.size()), columns)) {
        steps.push_back(row[static_cast<std::size_t>(rank - 1)].step);
      }
      continue;
    }
    // Explicit picks may name any frame of the sequence, not only
    // representatives; those get layered on demand.
    if (picks) {
      for (int step : (*picks)[static_cast<std::size_t>(view)]) {
        if (std::any_of(row.begin(), row.end(), [&](const RepresentativeIcon& r) { return r.step == step; })) continue;
        for (const auto& f : v.at("sequence").at("frames")) {
          if (f.at("step").get<int>() != step) continue;
          const LayeredIcon icon = build_layered_icon(store_.get_raster(f.at("artifact_ref").get<std::string>()),
                                                      *backends_.segmenter, config_.alpha);
          const std::string layers_ref = store_.put_json(layer_manifest(icon, store_.sink()));
          row.push_back(RepresentativeIcon{step, icon, layers_ref});
        }
      }
      std::sort(row.begin(), row.end(),
                [](const RepresentativeIcon& a, const RepresentativeIcon& b) { return a.step < b.step; });
    }
  }

  IconGrid g = assemble_grid(concept_label, sources, columns, picks);
  g = restyle_grid(std::move(g), {Variant::Outline}, *backends_.restyler);
  if (!g.complete(Variant::Outline)) {
    const auto& cells = g.cells.at(Variant::Outline);
    const auto failed = std::find_if(cells.begin(), cells.end(), [](const GridCell& c) { return !c.icon; });
    throw Error(ErrorCode::BackendUnavailable, "outline restyle failed: " + failed->error);
  }
  return grid_snapshot(g);
}

json Pipeline::restyle(const json& grid_snapshot_in, const json& request) const {
  require_role(backends_.restyler.get(), "restyle");
  const std::set<Variant> variants = parse_variant_list(require_field(request, "variants", "restyle request"));
  IconGrid g = restyle_grid(load_grid(grid_snapshot_in), variants, *backends_.restyler);
  return grid_snapshot(g);
}

json Pipeline::grid_snapshot(const IconGrid& g) const {
  json slots = json::array();
  for (const GridSlot& s : g.slots) {
    slots.push_back({{"row", s.row},
                     {"col", s.col},
                     {"view", to_string(s.provenance.view)},
                     {"step", s.provenance.step},
                     {"layers_ref", s.provenance.layers_ref},
                     {"composite_ref", store_.put_raster(s.composite)}});
  }
  json cells = json::object();
  for (const auto& [variant, vcells] : g.cells) {
    json list = json::array();
    for (const GridCell& c : vcells) {
      list.push_back(c.icon ? json{{"ref", store_.put_raster(*c.icon)}} : json{{"error", c.error}});
    }
    cells[std::string(to_string(variant))] = list;
  }
  const GridExport exported = export_grid(g, store_.sink());
  json picks = json::object();
  const GridPicks p = grid_picks(g);
  for (View v : kAllViews) picks[view_key(v)] = p[static_cast<std::size_t>(v)];
  return {{"concept", g.concept_label}, {"columns", g.columns}, {"picks", picks},
          {"slots", slots},             {"cells", cells},       {"manifest", exported.manifest}};
}

IconGrid Pipeline::load_grid(const json& snap) const {
  IconGrid g;
  g.concept_label = snap.value("concept", std::string());
  g.columns = require_field(snap, "columns", "grid snapshot").get<int>();
  for (const auto& s : require_field(snap, "slots", "grid snapshot")) {
    const View view = require_view(s.at("view").get<std::string>());
    g.slots.push_back(GridSlot{s.at("row").get<int>(), s.at("col").get<int>(), semantic_level(view),
                               s.at("col").get<int>() + 1,
                               CellProvenance{view, s.at("step").get<int>(), s.at("layers_ref").get<std::string>()},
                               store_.get_raster(s.at("composite_ref").get<std::string>())});
  }
  for (const auto& [name, list] : require_field(snap, "cells", "grid snapshot").items()) {
    const Variant variant = *parse_variant(name);
    std::vector<GridCell> cells;
    for (const auto& c : list) {
      GridCell cell{variant, std::nullopt, c.value("error", std::string())};
      if (c.contains("ref")) cell.icon = store_.get_raster(c.at("ref").get<std::string>());
      cells.push_back(std::move(cell));
    }
    g.cells.emplace(variant, std::move(cells));
  }
  return g;
}

}  // namespace iconix
