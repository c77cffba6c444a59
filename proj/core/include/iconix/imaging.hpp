#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iconix/raster.hpp"

namespace iconix {

inline constexpr int kDefaultThreshold = 128;
inline constexpr int kMetricSide = 32;

enum class Connectivity { Four, Eight };

struct Components {
  int count = 0;
  // Row-major, 0 = background, 1..count in order of first appearance.
  std::vector<std::int32_t> labels;
};

struct Layer {
  BinaryMask mask;
  Color fill;
  double alpha;
};

// Foreground is dark: a pixel is set iff its luma is below `threshold`.
BinaryMask binarize(const Raster& img, int threshold = kDefaultThreshold);

Components connected_components(const BinaryMask& mask, Connectivity connectivity);

// Source-over painting of `layers` (back to front) onto `background`, rounded
// half-up after each layer. Throws DimensionMismatch.
Raster composite_layers(const Raster& background, std::span<const Layer> layers);

// Area-weighted box filter onto a target grid.
Raster downsample(const Raster& img, int target_width, int target_height);

Raster to_gray(const Raster& img);

// Mean squared difference of 32x32 grayscale thumbnails, scaled to [0,1].
double reference_perceptual_distance(const Raster& a, const Raster& b);

// --- helpers for the reference backends ---

// Separable Gaussian blur with clamped borders; radius = ceil(3 sigma).
Raster gaussian_blur(const Raster& gray, double sigma);

// 3x3 grayscale min / max filters with clamped borders.
Raster min_filter3(const Raster& gray);
Raster max_filter3(const Raster& gray);

// Foreground pixels with at least one 4-neighbour outside the foreground
// (the image border counts as outside).
BinaryMask boundary(const BinaryMask& mask);

// Foreground plus every background pixel not 4-reachable from the border.
BinaryMask fill_holes(const BinaryMask& mask);

// Distinct values of a Gray8 raster, ascending.
std::vector<std::uint8_t> gray_levels(const Raster& gray);

Raster mask_to_raster(const BinaryMask& mask, std::uint8_t on = 0, std::uint8_t off = 255);

}  // namespace iconix
