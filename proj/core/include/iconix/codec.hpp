#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/raster.hpp"

namespace iconix {

using Bytes = std::vector<std::uint8_t>;

// 8-bit gray or 8-bit RGBA PNG, no ancillary chunks; identical rasters encode
// to identical bytes.
Bytes encode_png(const Raster& img);

// Gray and gray+alpha-free images decode to Gray8, everything else to Rgba8.
Raster decode_png(std::span<const std::uint8_t> bytes);

// Masks as 1-bit grayscale PNG, set pixels white.
Bytes encode_mask_png(const BinaryMask& mask);
BinaryMask decode_mask_png(std::span<const std::uint8_t> bytes);

// {width, height, runs}: alternating run lengths in row-major order, starting
// with an unset run (possibly 0).
nlohmann::json mask_to_rle(const BinaryMask& mask);
BinaryMask mask_from_rle(const nlohmann::json& rle);

std::string base64_encode(std::span<const std::uint8_t> bytes);
Bytes base64_decode(std::string_view text);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace iconix
