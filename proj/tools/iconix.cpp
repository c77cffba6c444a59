// iconix: batch runs, the session service and a standalone mock backend host.

#include <csignal>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "iconix/batch.hpp"
#include "iconix/service.hpp"
#include "iconix/wire.hpp"

namespace {

std::set<iconix::Variant> parse_styles(const std::string& list) {
  std::set<iconix::Variant> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto v = iconix::parse_variant(iconix::normalize_label(item));
    if (!v) throw iconix::Error(iconix::ErrorCode::InvalidConfig, "unknown style '" + item + "'");
    out.insert(*v);
  }
  if (out.empty()) throw iconix::Error(iconix::ErrorCode::InvalidConfig, "--styles is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Icon grid generation pipeline"};
  app.require_subcommand(1);

  iconix::BatchSpec spec;
  std::string styles = "outline";
  std::string out_dir;
  std::string config_file;
  int columns = 0;
  std::uint64_t seed = 0;
  auto* batch = app.add_subcommand("batch", "Run the whole pipeline headless and write its outputs");
  batch->add_option("--concept", spec.concept_label, "Concept to iconify")->required();
  batch->add_option("--out", out_dir, "Output directory")->required();
  batch->add_flag("--mock", spec.mock, "Use the in-process backends for every role");
  auto* columns_opt = batch->add_option("--columns", columns, "Grid columns (1-9)");
  batch->add_option("--styles", styles, "Comma-separated variants: outline,filled,color");
  auto* seed_opt = batch->add_option("--seed", seed, "Clustering seed");
  auto* config_opt = batch->add_option("--config", config_file, "JSON config overrides");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "iconix-sessions";
  auto* serve = app.add_subcommand("serve", "Serve the session API");
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--data", data_dir, "Session storage directory");

  std::string backend_host = "127.0.0.1";
  int backend_port = 8090;
  int image_size = 128;
  auto* backends = app.add_subcommand("backends", "Serve the in-process backends over the wire protocol");
  backends->add_option("--host", backend_host);
  backends->add_option("--port", backend_port);
  backends->add_option("--image-size", image_size);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : iconix::kExitConfig;
  }

  try {
    if (*batch) {
      spec.out_dir = out_dir;
      spec.styles = parse_styles(styles);
      if (*columns_opt) spec.columns = columns;
      if (*seed_opt) spec.seed = seed;
      if (*config_opt) spec.config_file = config_file;
      return iconix::run_batch(spec, std::cerr);
    }
    if (*serve) {
      iconix::SessionManager sessions(data_dir);
      iconix::SessionService service(sessions);
      std::cerr << "serving sessions on http://" << host << ":" << port << "\n";
      service.listen(host, port);
      return 0;
    }
    if (*backends) {
      iconix::BackendServer server(iconix::make_mock_backends(iconix::MockOptions{image_size}));
      std::cerr << "serving backends on http://" << backend_host << ":" << backend_port << "\n";
      server.listen(backend_host, backend_port);
      return 0;
    }
  } catch (const iconix::Error& e) {
    std::cerr << "error [" << iconix::to_string(e.code()) << "]: " << e.what() << "\n";
    return iconix::exit_code_for(e.code());
  }
  return iconix::kExitFailure;
}
