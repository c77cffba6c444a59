#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "iconix/config.hpp"
#include "iconix/error.hpp"

namespace iconix {

struct BatchSpec {
  std::string concept_label;
  std::filesystem::path out_dir;
  bool mock = false;
  std::optional<int> columns;
  std::set<Variant> styles{Variant::Outline};
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> config_file;
  nlohmann::json overrides = nlohmann::json::object();
};

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitBackend = 3,
  kExitEmptyPool = 4,
  kExitIo = 5,
};

int exit_code_for(ErrorCode code);

// Effective configuration: defaults, then the config file, then explicit
// overrides and flags. Without --mock and with no backends in the file, the
// ICONIX_* environment decides.
Config batch_config(const BatchSpec& spec);

// Runs the whole pipeline with default selections (top-ranked candidate, top
// relations per view, evenly spaced grid picks) and writes every stage's
// output under spec.out_dir. Returns an ExitCode; errors are reported on `log`.
int run_batch(const BatchSpec& spec, std::ostream& log);

}  // namespace iconix
