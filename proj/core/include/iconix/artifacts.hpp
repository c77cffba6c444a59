#pragma once

#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/codec.hpp"
#include "iconix/raster.hpp"

namespace iconix {

// Stores a raster somewhere and returns a reference to it.
using RasterSink = std::function<std::string(const Raster&)>;

// Append-only, content-addressed store: <dir>/<sha256>.png for images and
// <dir>/<sha256>.json for small documents. Identical bytes share one ref;
// reads verify the hash.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path dir);

  std::string put(std::span<const std::uint8_t> bytes, std::string_view extension = ".png");
  std::string put_json(const nlohmann::json& doc);
  nlohmann::json get_json(const std::string& ref) const;
  bool is_json(const std::string& ref) const;
  std::vector<std::string> refs() const;
  // NotFound if absent, CorruptStore if the bytes no longer hash to `ref`.
  Bytes get(const std::string& ref) const;
  bool contains(const std::string& ref) const;
  void verify(const std::string& ref) const;

  std::string put_raster(const Raster& img) { return put(encode_png(img)); }
  Raster get_raster(const std::string& ref) const { return decode_png(get(ref)); }
  std::string put_mask(const BinaryMask& mask) { return put(encode_mask_png(mask)); }
  BinaryMask get_mask(const std::string& ref) const { return decode_mask_png(get(ref)); }

  RasterSink sink() {
    return [this](const Raster& img) { return put_raster(img); };
  }

  std::filesystem::path path_of(const std::string& ref) const;
  const std::filesystem::path& dir() const { return dir_; }

  static bool valid_ref(const std::string& ref);

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

}  // namespace iconix
