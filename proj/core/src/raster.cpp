#include "iconix/raster.hpp"

#include <bit>
#include <string>

#include "iconix/error.hpp"

namespace iconix {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "raster dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

}  // namespace

Raster::Raster(int width, int height, Channels channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height);
  data_.assign(pixel_count() * static_cast<std::size_t>(channel_count()), fill);
}

Raster::Raster(int width, int height, Channels channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channel_count())) {
    throw Error(ErrorCode::DimensionMismatch, "raster data length does not match dimensions");
  }
}

Color Raster::color_at(int x, int y) const {
  Color c{0, 0, 0, 255};
  const std::size_t o = offset(x, y);
  if (channels_ == Channels::Gray8) {
    c[0] = c[1] = c[2] = data_[o];
  } else {
    for (int i = 0; i < 4; ++i) c[static_cast<std::size_t>(i)] = data_[o + static_cast<std::size_t>(i)];
  }
  return c;
}

void Raster::set_color(int x, int y, const Color& color) {
  const std::size_t o = offset(x, y);
  if (channels_ == Channels::Gray8) {
    data_[o] = color[0];
  } else {
    for (int i = 0; i < 4; ++i) data_[o + static_cast<std::size_t>(i)] = color[static_cast<std::size_t>(i)];
  }
}

std::uint8_t Raster::luma(int x, int y) const {
  const std::size_t o = offset(x, y);
  if (channels_ == Channels::Gray8) return data_[o];
  const unsigned a = data_[o + 3];
  auto over_white = [a](unsigned c) { return (c * a + 255U * (255U - a) + 127U) / 255U; };
  const unsigned r = over_white(data_[o]);
  const unsigned g = over_white(data_[o + 1]);
  const unsigned b = over_white(data_[o + 2]);
  return static_cast<std::uint8_t>((299U * r + 587U * g + 114U * b + 500U) / 1000U);
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  words_.assign((n + 63) / 64, 0);
}

void BinaryMask::set(int x, int y, bool value) {
  const std::size_t i = index(x, y);
  std::uint64_t& word = words_[i >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  const bool was = (word & bit) != 0;
  if (value == was) return;
  if (value) {
    word |= bit;
    ++area_;
  } else {
    word &= ~bit;
    --area_;
  }
}

std::size_t BinaryMask::recount() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace iconix
