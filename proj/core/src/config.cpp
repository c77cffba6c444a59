#include "iconix/config.hpp"

#include <fstream>

#include "iconix/error.hpp"

namespace iconix {

void Config::validate() const {
  simplification.validate();
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "k must be at least 1");
  if (columns < 1 || columns > kMaxColumns) throw Error(ErrorCode::InvalidConfig, "columns must be 1-9");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must lie in [0, 1]");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidConfig, "max_iterations must be at least 1");
  if (bucket_cap < 1) throw Error(ErrorCode::InvalidConfig, "bucket_cap must be at least 1");
  if (selections_per_view < 1) throw Error(ErrorCode::InvalidConfig, "selections_per_view must be at least 1");
  if (image_size < 16 || image_size > 2048) throw Error(ErrorCode::InvalidConfig, "image_size must be 16-2048");
  for (const auto& e : backends) e.validate();
}

nlohmann::json config_json(const Config& c) {
  return {{"delta", c.simplification.delta},
          {"epsilon", c.simplification.epsilon},
          {"stable_required", c.simplification.stable_required},
          {"max_steps", c.simplification.max_steps},
          {"k", c.k},
          {"columns", c.columns},
          {"alpha", c.alpha},
          {"seed", c.seed},
          {"max_iterations", c.max_iterations},
          {"bucket_cap", c.bucket_cap},
          {"selections_per_view", c.selections_per_view},
          {"image_size", c.image_size},
          {"backends", endpoints_to_json(c.backends)}};
}

namespace {

template <typename T>
T typed(const std::string& key, const nlohmann::json& v) {
  const bool ok = [&] {
    if constexpr (std::is_same_v<T, double>) {
      return v.is_number();
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
    } else {
      return v.is_number_integer();
    }
  }();
  if (!ok) throw Error(ErrorCode::InvalidConfig, "config key '" + key + "' has the wrong type");
  return v.get<T>();
}

}  // namespace

Config merge_config(const Config& base, const nlohmann::json& overrides) {
  if (overrides.is_null()) return base;
  if (!overrides.is_object()) throw Error(ErrorCode::InvalidConfig, "config overrides must be a JSON object");
  Config c = base;
  for (const auto& [key, v] : overrides.items()) {
    if (key == "delta") c.simplification.delta = typed<int>(key, v);
    else if (key == "epsilon") c.simplification.epsilon = typed<double>(key, v);
    else if (key == "stable_required") c.simplification.stable_required = typed<int>(key, v);
    else if (key == "max_steps") c.simplification.max_steps = typed<int>(key, v);
    else if (key == "k") c.k = typed<int>(key, v);
    else if (key == "columns") c.columns = typed<int>(key, v);
    else if (key == "alpha") c.alpha = typed<double>(key, v);
    else if (key == "seed") c.seed = typed<std::uint64_t>(key, v);
    else if (key == "max_iterations") c.max_iterations = typed<int>(key, v);
    else if (key == "bucket_cap") c.bucket_cap = typed<int>(key, v);
    else if (key == "selections_per_view") c.selections_per_view = typed<int>(key, v);
    else if (key == "image_size") c.image_size = typed<int>(key, v);
    else if (key == "backends") {
      try {
        c.backends = endpoints_from_json(v);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("bad backends entry: ") + e.what());
      }
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, "config file " + path + " is not JSON: " + e.what());
  }
  return merge_config(Config{}, j);
}

}  // namespace iconix
