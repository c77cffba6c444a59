#include "iconix/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "iconix/error.hpp"

namespace iconix {

namespace {

class DisjointSet {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }
  std::int32_t find(std::int32_t x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[static_cast<std::size_t>(a)] = b;
  }

 private:
  std::vector<std::int32_t> parent_;
};

std::uint8_t round_half_up(double v) {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

void require_gray(const Raster& img) {
  if (img.channels() != Channels::Gray8) {
    throw Error(ErrorCode::DimensionMismatch, "expected a Gray8 raster");
  }
}

template <typename Pick>
Raster filter3(const Raster& gray, Pick pick) {
  require_gray(gray);
  const int w = gray.width();
  const int h = gray.height();
  Raster out(w, h, Channels::Gray8);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint8_t v = gray.at(x, y);
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = std::clamp(x + dx, 0, w - 1);
          v = pick(v, gray.at(xx, yy));
        }
      }
      out.at(x, y) = v;
    }
  }
  return out;
}

}  // namespace

BinaryMask binarize(const Raster& img, int threshold) {
  BinaryMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.luma(x, y) < threshold) mask.set(x, y);
    }
  }
  return mask;
}

Components connected_components(const BinaryMask& mask, Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::int32_t> provisional(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), -1);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };
  DisjointSet sets;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      std::int32_t label = -1;
      auto visit = [&](int nx, int ny) {
        if (nx < 0 || ny < 0 || nx >= w) return;
        const std::int32_t n = provisional[idx(nx, ny)];
        if (n < 0) return;
        if (label < 0) {
          label = n;
        } else {
          sets.unite(label, n);
        }
      };
      visit(x - 1, y);
      visit(x, y - 1);
      if (connectivity == Connectivity::Eight) {
        visit(x - 1, y - 1);
        visit(x + 1, y - 1);
      }
      provisional[idx(x, y)] = label < 0 ? sets.make() : label;
    }
  }

  Components out;
  out.labels.assign(provisional.size(), 0);
  std::vector<std::int32_t> final_label;
  for (std::size_t i = 0; i < provisional.size(); ++i) {
    if (provisional[i] < 0) continue;
    const auto root = static_cast<std::size_t>(sets.find(provisional[i]));
    if (root >= final_label.size()) final_label.resize(root + 1, 0);
    if (final_label[root] == 0) final_label[root] = ++out.count;
    out.labels[i] = final_label[root];
  }
  return out;
}

Raster composite_layers(const Raster& background, std::span<const Layer> layers) {
  for (const Layer& layer : layers) {
    if (!layer.mask.same_size(background)) {
      throw Error(ErrorCode::DimensionMismatch, "layer mask size differs from background");
    }
  }
  Raster out = background;
  const int nc = out.channel_count();
  for (const Layer& layer : layers) {
    const double a = layer.alpha;
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        if (!layer.mask.get(x, y)) continue;
        for (int c = 0; c < nc; ++c) {
          const double under = out.at(x, y, c);
          const double fill = layer.fill[static_cast<std::size_t>(c)];
          out.at(x, y, c) = round_half_up(a * fill + (1.0 - a) * under);
        }
      }
    }
  }
  return out;
}

Raster downsample(const Raster& img, int target_width, int target_height) {
  if (target_width < 1 || target_height < 1) {
    throw Error(ErrorCode::DimensionMismatch, "downsample target must be at least 1x1");
  }
  const std::int64_t sw = img.width();
  const std::int64_t sh = img.height();
  const std::int64_t tw = target_width;
  const std::int64_t th = target_height;
  const int nc = img.channel_count();

  // Work in scaled coordinates: source pixel i spans [i*t, (i+1)*t), target
  // pixel j spans [j*s, (j+1)*s). Overlaps are exact integers.
  struct Span1 {
    std::int64_t first;
    std::vector<std::int64_t> weights;
  };
  auto spans = [](std::int64_t s, std::int64_t t) {
    std::vector<Span1> out(static_cast<std::size_t>(t));
    for (std::int64_t j = 0; j < t; ++j) {
      const std::int64_t lo = j * s;
      const std::int64_t hi = (j + 1) * s;
      Span1& sp = out[static_cast<std::size_t>(j)];
      sp.first = lo / t;
      for (std::int64_t i = sp.first; i * t < hi; ++i) {
        const std::int64_t a = std::max(lo, i * t);
        const std::int64_t b = std::min(hi, (i + 1) * t);
        sp.weights.push_back(b - a);
      }
    }
    return out;
  };
  const auto xs = spans(sw, tw);
  const auto ys = spans(sh, th);
  const std::int64_t total = sw * sh;

  Raster out(target_width, target_height, img.channels());
  for (int ty = 0; ty < target_height; ++ty) {
    const Span1& yspan = ys[static_cast<std::size_t>(ty)];
    for (int tx = 0; tx < target_width; ++tx) {
      const Span1& xspan = xs[static_cast<std::size_t>(tx)];
      for (int c = 0; c < nc; ++c) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < yspan.weights.size(); ++j) {
          const int sy = static_cast<int>(yspan.first + static_cast<std::int64_t>(j));
          for (std::size_t i = 0; i < xspan.weights.size(); ++i) {
            const int sx = static_cast<int>(xspan.first + static_cast<std::int64_t>(i));
            sum += static_cast<std::int64_t>(img.at(sx, sy, c)) * yspan.weights[j] * xspan.weights[i];
          }
        }
        out.at(tx, ty, c) = static_cast<std::uint8_t>((2 * sum + total) / (2 * total));
      }
    }
  }
  return out;
}

Raster to_gray(const Raster& img) {
  if (img.channels() == Channels::Gray8) return img;
  Raster out(img.width(), img.height(), Channels::Gray8);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.at(x, y) = img.luma(x, y);
  }
  return out;
}

double reference_perceptual_distance(const Raster& a, const Raster& b) {
  if (!a.same_size(b)) {
    throw Error(ErrorCode::DimensionMismatch, "perceptual distance needs same-size rasters");
  }
  const Raster ta = downsample(to_gray(a), kMetricSide, kMetricSide);
  const Raster tb = downsample(to_gray(b), kMetricSide, kMetricSide);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < ta.data().size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(ta.data()[i]) - tb.data()[i];
    sum += d * d;
  }
  return static_cast<double>(sum) / (static_cast<double>(ta.data().size()) * 255.0 * 255.0);
}

Raster gaussian_blur(const Raster& gray, double sigma) {
  require_gray(gray);
  if (sigma <= 0.0) return gray;
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  for (int i = -radius; i <= radius; ++i) {
    kernel[static_cast<std::size_t>(i + radius)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
  }
  const double norm = std::accumulate(kernel.begin(), kernel.end(), 0.0);
  for (double& k : kernel) k /= norm;

  const int w = gray.width();
  const int h = gray.height();
  std::vector<double> tmp(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += kernel[static_cast<std::size_t>(i + radius)] * gray.at(std::clamp(x + i, 0, w - 1), y);
      }
      tmp[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] = acc;
    }
  }
  Raster out(w, h, Channels::Gray8);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        const int yy = std::clamp(y + i, 0, h - 1);
        acc += kernel[static_cast<std::size_t>(i + radius)] *
               tmp[static_cast<std::size_t>(yy) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
      }
      out.at(x, y) = round_half_up(acc);
    }
  }
  return out;
}

Raster min_filter3(const Raster& gray) {
  return filter3(gray, [](std::uint8_t a, std::uint8_t b) { return std::min(a, b); });
}

Raster max_filter3(const Raster& gray) {
  return filter3(gray, [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); });
}

BinaryMask boundary(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(w, h);
  auto outside = [&](int x, int y) {
    return x < 0 || y < 0 || x >= w || y >= h || !mask.get(x, y);
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.get(x, y)) continue;
      if (outside(x - 1, y) || outside(x + 1, y) || outside(x, y - 1) || outside(x, y + 1)) {
        out.set(x, y);
      }
    }
  }
  return out;
}

BinaryMask fill_holes(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::uint8_t> reached(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
  auto idx = [w](int x, int y) { return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x); };
  std::deque<std::pair<int, int>> queue;
  auto seed = [&](int x, int y) {
    if (!mask.get(x, y) && !reached[idx(x, y)]) {
      reached[idx(x, y)] = 1;
      queue.emplace_back(x, y);
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!queue.empty()) {
    const auto [x, y] = queue.front();
    queue.pop_front();
    if (x > 0) seed(x - 1, y);
    if (x + 1 < w) seed(x + 1, y);
    if (y > 0) seed(x, y - 1);
    if (y + 1 < h) seed(x, y + 1);
  }
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!reached[idx(x, y)]) out.set(x, y);
    }
  }
  return out;
}

std::vector<std::uint8_t> gray_levels(const Raster& gray) {
  require_gray(gray);
  std::array<bool, 256> seen{};
  for (std::uint8_t v : gray.data()) seen[v] = true;
  std::vector<std::uint8_t> out;
  for (int v = 0; v < 256; ++v) {
    if (seen[static_cast<std::size_t>(v)]) out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

Raster mask_to_raster(const BinaryMask& mask, std::uint8_t on, std::uint8_t off) {
  Raster out(mask.width(), mask.height(), Channels::Gray8, off);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.get(x, y)) out.at(x, y) = on;
    }
  }
  return out;
}

}  // namespace iconix
