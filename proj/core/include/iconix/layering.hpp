#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/artifacts.hpp"
#include "iconix/backends.hpp"
#include "iconix/imaging.hpp"

namespace iconix {

inline constexpr double kDefaultAlpha = 0.5;

struct LayeredIcon {
  Raster base;
  std::vector<Layer> layers;  // back to front
  Raster composite;
  bool passthrough = false;   // no masks were found

  Raster recomposite() const { return composite_layers(base, layers); }
};

// Row-major index of the first set pixel; area() for an empty mask.
std::size_t first_set_index(const BinaryMask& mask);

// Area descending; equal areas by first set pixel in row-major order.
std::vector<BinaryMask> order_masks(std::vector<BinaryMask> masks);

// Per-channel mean of `frame` under `mask`, rounded half-up. For gray frames
// the value is replicated to RGB with opaque alpha.
Color mean_color_under(const Raster& frame, const BinaryMask& mask);

// Segments `frame`, orders the masks and composites them over the frame with
// mean-colour fills. Throws InvalidConfig for alpha outside [0,1].
LayeredIcon build_layered_icon(const Raster& frame, Segmenter& segmenter, double alpha = kDefaultAlpha);

// {frame_ref, alpha, passthrough, composite_ref, layers:[{mask_ref, area, order_index, fill}]}
// Masks are stored as gray rasters (set = white).
nlohmann::json layer_manifest(const LayeredIcon& icon, const RasterSink& store);

}  // namespace iconix
