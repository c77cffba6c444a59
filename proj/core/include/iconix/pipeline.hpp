#pragma once

#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "iconix/artifacts.hpp"
#include "iconix/backends.hpp"
#include "iconix/config.hpp"
#include "iconix/grid.hpp"

namespace iconix {

// Stage bodies shared by the session service and the batch runner. Each
// stage reads the JSON snapshots of earlier stages and returns its own;
// rasters live in the artifact store and snapshots hold their refs.
class Pipeline {
 public:
  Pipeline(Config config, BackendSet backends, ArtifactStore& store);

  const Config& config() const { return config_; }
  ArtifactStore& store() const { return store_; }

  nlohmann::json ideate(const std::string& concept_label) const;
  // `candidate_label` must appear in the ideation candidate table.
  nlohmann::json scaffold(const nlohmann::json& ideated, const std::string& candidate_label) const;
  // request: {selections?: {view: [{relation, object}]}, prompt_edits?: {view: text}}
  nlohmann::json exemplars(const nlohmann::json& scaffolded, const nlohmann::json& request) const;
  // request: {exemplar_views?: [view]}. Views not listed are carried over
  // from `previous` when it has them.
  nlohmann::json simplify(const nlohmann::json& exemplars, const nlohmann::json& request,
                          const nlohmann::json& previous = nullptr) const;
  // request: {picks?: {view: [step]}, columns?}. Produces the Outline grid.
  nlohmann::json grid(const nlohmann::json& simplified, const nlohmann::json& request,
                      const std::string& concept_label) const;
  // request: {variants: [name]}. Returns the updated grid snapshot.
  nlohmann::json restyle(const nlohmann::json& grid_snapshot, const nlohmann::json& request) const;

  IconGrid load_grid(const nlohmann::json& grid_snapshot) const;

 private:
  nlohmann::json grid_snapshot(const IconGrid& grid) const;

  Config config_;
  BackendSet backends_;
  ArtifactStore& store_;
};

View require_view(const std::string& name);
std::set<Variant> parse_variant_list(const nlohmann::json& names);

}  // namespace iconix
