#include "iconix/artifacts.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <thread>

#include "iconix/error.hpp"

namespace iconix {

namespace fs = std::filesystem;

ArtifactStore::ArtifactStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create artifact directory " + dir_.string() + ": " + ec.message());
}

bool ArtifactStore::valid_ref(const std::string& ref) {
  return ref.size() == 64 &&
         std::all_of(ref.begin(), ref.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

fs::path ArtifactStore::path_of(const std::string& ref) const {
  fs::path json = dir_ / (ref + ".json");
  if (fs::exists(json)) return json;
  return dir_ / (ref + ".png");
}

bool ArtifactStore::is_json(const std::string& ref) const { return path_of(ref).extension() == ".json"; }

std::string ArtifactStore::put_json(const nlohmann::json& doc) {
  const std::string text = doc.dump();
  return put(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()), ".json");
}

nlohmann::json ArtifactStore::get_json(const std::string& ref) const {
  const Bytes bytes = get(ref);
  return nlohmann::json::parse(bytes.begin(), bytes.end());
}

std::string ArtifactStore::put(std::span<const std::uint8_t> png_bytes, std::string_view extension) {
  const std::string ref = sha256_hex(png_bytes);
  const fs::path target = dir_ / (ref + std::string(extension));
  std::lock_guard lock(mutex_);
  if (fs::exists(target)) return ref;
  static std::atomic<unsigned> counter{0};
  const fs::path tmp = dir_ / (ref + ".tmp" + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary);
    out.write(reinterpret_cast<const char*>(png_bytes.data()), static_cast<std::streamsize>(png_bytes.size()));
    if (!out) throw Error(ErrorCode::Io, "cannot write artifact " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot publish artifact " + target.string() + ": " + ec.message());
  return ref;
}

std::vector<std::string> ArtifactStore::refs() const {
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    const std::string stem = entry.path().stem().string();
    const auto ext = entry.path().extension();
    if ((ext == ".png" || ext == ".json") && valid_ref(stem)) out.push_back(stem);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Bytes ArtifactStore::get(const std::string& ref) const {
  if (!valid_ref(ref)) throw Error(ErrorCode::NotFound, "malformed artifact ref '" + ref + "'");
  std::ifstream in(path_of(ref), std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "artifact " + ref + " not found");
  Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (sha256_hex(bytes) != ref) throw Error(ErrorCode::CorruptStore, "artifact " + ref + " fails its checksum");
  return bytes;
}

bool ArtifactStore::contains(const std::string& ref) const { return valid_ref(ref) && fs::exists(path_of(ref)); }

void ArtifactStore::verify(const std::string& ref) const { (void)get(ref); }

}  // namespace iconix
