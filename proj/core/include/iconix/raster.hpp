#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace iconix {

enum class Channels : std::uint8_t { Gray8 = 1, Rgba8 = 4 };

inline constexpr int channel_count(Channels c) { return static_cast<int>(c); }

// Per-channel color; Gray8 uses only the first entry.
using Color = std::array<std::uint8_t, 4>;

// Row-major 8-bit image, either single-channel gray or interleaved RGBA.
class Raster {
 public:
  Raster(int width, int height, Channels channels, std::uint8_t fill = 0);
  Raster(int width, int height, Channels channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  Channels channels() const noexcept { return channels_; }
  int channel_count() const noexcept { return iconix::channel_count(channels_); }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int x, int y, int channel = 0) const {
    return data_[offset(x, y) + static_cast<std::size_t>(channel)];
  }
  std::uint8_t& at(int x, int y, int channel = 0) {
    return data_[offset(x, y) + static_cast<std::size_t>(channel)];
  }

  Color color_at(int x, int y) const;
  void set_color(int x, int y, const Color& color);

  // Rec-601 luma; RGBA pixels are composited over white first.
  std::uint8_t luma(int x, int y) const;

  bool same_size(const Raster& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(channel_count());
  }

  int width_;
  int height_;
  Channels channels_;
  std::vector<std::uint8_t> data_;
};

// One bit per pixel, row-major, with a cached popcount.
class BinaryMask {
 public:
  BinaryMask(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t area() const noexcept { return area_; }

  bool get(int x, int y) const {
    const std::size_t i = index(x, y);
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(int x, int y, bool value = true);

  bool same_size(const Raster& r) const noexcept {
    return width_ == r.width() && height_ == r.height();
  }
  bool same_size(const BinaryMask& m) const noexcept {
    return width_ == m.width_ && height_ == m.height_;
  }

  // Recount set bits; equals area() for any mask built through set().
  std::size_t recount() const;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::size_t area_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace iconix
