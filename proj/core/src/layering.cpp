#include "iconix/layering.hpp"

#include <algorithm>
#include <numeric>

#include "iconix/error.hpp"

namespace iconix {

std::size_t first_set_index(const BinaryMask& mask) {
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.get(x, y)) return static_cast<std::size_t>(y) * static_cast<std::size_t>(mask.width()) + x;
    }
  }
  return static_cast<std::size_t>(mask.width()) * static_cast<std::size_t>(mask.height());
}

std::vector<BinaryMask> order_masks(std::vector<BinaryMask> masks) {
  std::vector<std::size_t> first(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) first[i] = first_set_index(masks[i]);
  std::vector<std::size_t> idx(masks.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (masks[a].area() != masks[b].area()) return masks[a].area() > masks[b].area();
    return first[a] < first[b];
  });
  std::vector<BinaryMask> out;
  out.reserve(masks.size());
  for (std::size_t i : idx) out.push_back(std::move(masks[i]));
  return out;
}

Color mean_color_under(const Raster& frame, const BinaryMask& mask) {
  if (!mask.same_size(frame)) throw Error(ErrorCode::DimensionMismatch, "mask size differs from frame");
  const int nc = frame.channel_count();
  std::array<std::uint64_t, 4> sum{};
  std::uint64_t n = 0;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      if (!mask.get(x, y)) continue;
      for (int c = 0; c < nc; ++c) sum[static_cast<std::size_t>(c)] += frame.at(x, y, c);
      ++n;
    }
  }
  if (n == 0) return {0, 0, 0, 255};
  Color out{};
  for (int c = 0; c < nc; ++c) {
    out[static_cast<std::size_t>(c)] = static_cast<std::uint8_t>((2 * sum[static_cast<std::size_t>(c)] + n) / (2 * n));
  }
  if (nc == 1) out = {out[0], out[0], out[0], 255};
  return out;
}

LayeredIcon build_layered_icon(const Raster& frame, Segmenter& segmenter, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidConfig, "alpha must lie in [0, 1]");
  LayeredIcon icon{frame, {}, frame, false};
  for (BinaryMask& mask : order_masks(segmenter.segment(frame))) {
    if (!mask.same_size(frame)) throw Error(ErrorCode::DimensionMismatch, "segmenter returned a mask of the wrong size");
    const Color fill = mean_color_under(frame, mask);
    icon.layers.push_back(Layer{std::move(mask), fill, alpha});
  }
  icon.passthrough = icon.layers.empty();
  icon.composite = icon.recomposite();
  return icon;
}

nlohmann::json layer_manifest(const LayeredIcon& icon, const RasterSink& store) {
  nlohmann::json layers = nlohmann::json::array();
  double alpha = kDefaultAlpha;
  for (std::size_t i = 0; i < icon.layers.size(); ++i) {
    const Layer& l = icon.layers[i];
    alpha = l.alpha;
    layers.push_back({{"mask_ref", store(mask_to_raster(l.mask, 255, 0))},
                      {"area", l.mask.area()},
                      {"order_index", i},
                      {"alpha", l.alpha},
                      {"fill", {l.fill[0], l.fill[1], l.fill[2], l.fill[3]}}});
  }
  return {{"frame_ref", store(icon.base)},
          {"composite_ref", store(icon.composite)},
          {"alpha", alpha},
          {"passthrough", icon.passthrough},
          {"layers", layers}};
}

}  // namespace iconix
