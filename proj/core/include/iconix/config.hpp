#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/backends.hpp"
#include "iconix/ideation.hpp"
#include "iconix/layering.hpp"
#include "iconix/grid.hpp"
#include "iconix/scaffold.hpp"
#include "iconix/selection.hpp"
#include "iconix/simplification.hpp"

namespace iconix {

// Everything a pipeline run needs besides its inputs. JSON keys match the
// field names.
struct Config {
  SimplificationParams simplification;  // delta, epsilon, stable_required, max_steps
  int k = kDefaultClusters;
  int columns = kDefaultColumns;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = kDefaultSeed;
  int max_iterations = kDefaultMaxIterations;
  int bucket_cap = static_cast<int>(kBucketCap);
  int selections_per_view = 3;
  int image_size = 128;
  // Empty means every role runs in-process.
  std::vector<BackendEndpoint> backends;

  void validate() const;  // InvalidConfig
  MockOptions mock_options() const { return MockOptions{image_size}; }
};

nlohmann::json config_json(const Config& c);

// Applies `overrides` on top of `base`. Unknown keys, wrong types and
// out-of-range values are InvalidConfig.
Config merge_config(const Config& base, const nlohmann::json& overrides);

// Reads a JSON config file as overrides to the defaults. Io if unreadable.
Config load_config_file(const std::string& path);

}  // namespace iconix
