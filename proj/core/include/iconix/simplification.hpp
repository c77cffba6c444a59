#pragma once

#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/artifacts.hpp"
#include "iconix/backends.hpp"
#include "iconix/error.hpp"
#include "iconix/raster.hpp"

namespace iconix {

enum class Termination { PlateauAndSingleComponent, MaxSteps };
std::string_view to_string(Termination t);

struct SimplificationParams {
  int delta = 5;
  double epsilon = 0.02;
  int stable_required = 2;
  int max_steps = 200;

  void validate() const;  // InvalidConfig
};

struct Frame {
  int step;
  Raster image;
};

struct Checkpoint {
  int step;
  double distance;  // to the frame delta steps earlier
};

struct SimplificationSequence {
  std::vector<Frame> frames;  // frames[0] is the source at step 0
  std::vector<Checkpoint> checkpoints;
  std::optional<Termination> terminated_by;  // empty when a backend failed
  std::optional<ErrorCode> error_code;
  std::string error_message;

  const Raster& source() const { return frames.front().image; }
  int last_step() const { return frames.back().step; }
  bool complete() const { return terminated_by.has_value(); }
};

// The last `stable_required` distances are each below epsilon, and the frame
// binarizes to exactly one 8-connected component. The component check only
// runs once the plateau holds.
bool check_termination(std::span<const Checkpoint> checkpoints, const Raster& latest_frame, double epsilon,
                       int stable_required);

// Advances the simplifier delta steps at a time, checkpointing the distance
// between frame t and frame t - delta, until check_termination or max_steps.
// A backend failure returns the frames so far with error_code set.
SimplificationSequence run_simplification(const Raster& source, Simplifier& simplifier, PerceptualMetric& metric,
                                          const SimplificationParams& params = {});

// {source_ref, frames:[{step, artifact_ref}], checkpoints:[{step, distance}], terminated_by, complete}
nlohmann::json sequence_manifest(const SimplificationSequence& seq, const RasterSink& store);

}  // namespace iconix
