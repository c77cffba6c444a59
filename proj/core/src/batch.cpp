#include "iconix/batch.hpp"

#include <fstream>
#include <ostream>

#include "iconix/pipeline.hpp"

namespace iconix {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidK:
    case ErrorCode::SelectionOutOfBucket:
    case ErrorCode::NonMonotonicPicks:
      return kExitConfig;
    case ErrorCode::BackendUnavailable:
    case ErrorCode::BackendTimeout:
    case ErrorCode::MalformedResponse:
      return kExitBackend;
    case ErrorCode::EmptyPool:
      return kExitEmptyPool;
    case ErrorCode::Io:
    case ErrorCode::CorruptStore:
      return kExitIo;
    default:
      return kExitFailure;
  }
}

Config batch_config(const BatchSpec& spec) {
  Config c = spec.config_file ? load_config_file(spec.config_file->string()) : Config{};
  json flags = spec.overrides.is_null() ? json::object() : spec.overrides;
  if (spec.columns) flags["columns"] = *spec.columns;
  if (spec.seed) flags["seed"] = *spec.seed;
  c = merge_config(c, flags);
  if (spec.mock) {
    c.backends.clear();
  } else if (c.backends.empty()) {
    c.backends = endpoints_from_env(false);
  }
  c.validate();
  return c;
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_bytes(const fs::path& path, const Bytes& bytes) {
  write_text(path, std::string(bytes.begin(), bytes.end()));
}

}  // namespace

int run_batch(const BatchSpec& spec, std::ostream& log) {
  try {
    if (spec.concept_label.empty()) throw Error(ErrorCode::InvalidConfig, "--concept is required");
    if (spec.out_dir.empty()) throw Error(ErrorCode::InvalidConfig, "--out is required");
    const Config config = batch_config(spec);

    std::error_code ec;
    fs::create_directories(spec.out_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + spec.out_dir.string() + ": " + ec.message());
    ArtifactStore store(spec.out_dir / "artifacts");
    const Pipeline pipeline(config, make_backends(config.backends, config.mock_options()), store);
    const fs::path& out = spec.out_dir;
    write_json(out / "config.json", config_json(config));

    const json ideated = pipeline.ideate(spec.concept_label);
    write_json(out / "candidate_table.json", ideated.at("candidates"));
    write_json(out / "ideation.json", ideated);
    const std::string top = ideated.at("candidates").at(0).at("label").get<std::string>();
    log << "ideation: " << ideated.at("candidates").size() << " candidates, top '" << top << "'\n";

    const json scaffolded = pipeline.scaffold(ideated, top);
    write_json(out / "scaffold.json", scaffolded);

    const json exemplars = pipeline.exemplars(scaffolded, json::object());
    write_json(out / "prompt_chain.json", exemplars.at("prompt_chain"));
    for (const auto& e : exemplars.at("exemplars")) {
      write_bytes(out / "exemplars" / (e.at("view").get<std::string>() + ".png"), store.get(e.at("ref")));
    }

    const json simplified = pipeline.simplify(exemplars, json::object());
    for (const auto& [view, v] : simplified.at("views").items()) {
      write_json(out / "sequences" / (view + ".json"), v.at("sequence"));
      write_json(out / "scatter" / (view + ".json"), v.at("scatter"));
      write_json(out / "representatives" / (view + ".json"),
                 {{"clustering", v.at("clustering")}, {"representatives", v.at("representatives")}});
      log << "simplify " << view << ": " << v.at("sequence").at("frames").size() << " frames, "
          << v.at("sequence").value("terminated_by", std::string("incomplete")) << "\n";
    }

    json grid = pipeline.grid(simplified, json::object(), top);
    json names = json::array();
    for (Variant v : spec.styles) names.push_back(to_string(v));
    grid = pipeline.restyle(grid, {{"variants", names}});
    const json& manifest = grid.at("manifest");
    write_json(out / "grid" / "manifest.json", manifest);
    for (const auto& [variant, ref] : manifest.at("sheets").items()) {
      write_bytes(out / "grid" / (variant + ".png"), store.get(ref.get<std::string>()));
    }
    if (!manifest.at("incomplete").empty()) {
      throw Error(ErrorCode::BackendUnavailable, "restyle left variants incomplete: " + manifest.at("incomplete").dump());
    }
    log << "grid: " << manifest.at("rows") << "x" << manifest.at("columns") << ", variants "
        << manifest.at("variants").dump() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    log << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    log << "error [Io]: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace iconix
