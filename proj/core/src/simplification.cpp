#include "iconix/simplification.hpp"

#include <algorithm>

#include "iconix/imaging.hpp"

namespace iconix {

std::string_view to_string(Termination t) {
  return t == Termination::PlateauAndSingleComponent ? "Plateau_And_SingleComponent" : "MaxSteps";
}

void SimplificationParams::validate() const {
  if (delta < 1) throw Error(ErrorCode::InvalidConfig, "delta must be at least 1");
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
  if (stable_required < 1) throw Error(ErrorCode::InvalidConfig, "stable_required must be at least 1");
  if (max_steps < delta) throw Error(ErrorCode::InvalidConfig, "max_steps must be at least delta");
}

bool check_termination(std::span<const Checkpoint> checkpoints, const Raster& latest_frame, double epsilon,
                       int stable_required) {
  const auto needed = static_cast<std::size_t>(stable_required);
  if (checkpoints.size() < needed) return false;
  const bool plateau = std::all_of(checkpoints.end() - static_cast<std::ptrdiff_t>(needed), checkpoints.end(),
                                   [epsilon](const Checkpoint& c) { return c.distance < epsilon; });
  if (!plateau) return false;
  return connected_components(binarize(latest_frame, kDefaultThreshold), Connectivity::Eight).count == 1;
}

SimplificationSequence run_simplification(const Raster& source, Simplifier& simplifier, PerceptualMetric& metric,
                                          const SimplificationParams& params) {
  params.validate();
  SimplificationSequence seq;
  seq.frames.push_back(Frame{0, source});

  int t = 0;
  while (t < params.max_steps) {
    const int n = std::min(params.delta - t % params.delta, params.max_steps - t);
    try {
      std::vector<Raster> produced = simplifier.simplify(seq.frames.back().image, n, t + 1);
      if (produced.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::MalformedResponse, "simplifier returned the wrong number of frames");
      }
      for (Raster& img : produced) {
        if (!img.same_size(source)) throw Error(ErrorCode::MalformedResponse, "simplifier changed frame size");
        seq.frames.push_back(Frame{++t, std::move(img)});
      }
      if (t % params.delta != 0) continue;
      const Raster& current = seq.frames.back().image;
      const Raster& earlier = seq.frames[seq.frames.size() - 1 - static_cast<std::size_t>(params.delta)].image;
      seq.checkpoints.push_back(Checkpoint{t, metric.distance(current, earlier)});
    } catch (const Error& e) {
      if (!is_backend_error(e.code())) throw;
      seq.error_code = e.code();
      seq.error_message = e.what();
      return seq;
    }
    if (check_termination(seq.checkpoints, seq.frames.back().image, params.epsilon, params.stable_required)) {
      seq.terminated_by = Termination::PlateauAndSingleComponent;
      return seq;
    }
  }
  seq.terminated_by = Termination::MaxSteps;
  return seq;
}

nlohmann::json sequence_manifest(const SimplificationSequence& seq, const RasterSink& store) {
  nlohmann::json frames = nlohmann::json::array();
  for (const Frame& f : seq.frames) frames.push_back({{"step", f.step}, {"artifact_ref", store(f.image)}});
  nlohmann::json checkpoints = nlohmann::json::array();
  for (const Checkpoint& c : seq.checkpoints) checkpoints.push_back({{"step", c.step}, {"distance", c.distance}});
  nlohmann::json out{{"source_ref", frames.front().at("artifact_ref")},
                     {"frames", frames},
                     {"checkpoints", checkpoints},
                     {"complete", seq.complete()}};
  out["terminated_by"] = seq.terminated_by ? nlohmann::json(to_string(*seq.terminated_by)) : nlohmann::json(nullptr);
  if (seq.error_code) out["error"] = {{"code", to_string(*seq.error_code)}, {"message", seq.error_message}};
  return out;
}

}  // namespace iconix
