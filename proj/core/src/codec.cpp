#include "iconix/codec.hpp"

#include <png.h>

#include <cstring>
#include <memory>

#include <openssl/evp.h>

#include "iconix/error.hpp"

namespace iconix {

namespace {

[[noreturn]] void png_fail(png_structp png, png_const_charp message) {
  auto* text = static_cast<std::string*>(png_get_error_ptr(png));
  if (text != nullptr) *text = message;
  png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

void write_to_vector(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_noop(png_structp) {}

// rows: packed scanlines already in PNG layout.
Bytes write_png(int width, int height, int bit_depth, int color_type,
                const std::vector<Bytes>& rows) {
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, png_warn);
  if (png == nullptr) throw Error(ErrorCode::Io, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  Bytes out;
  std::vector<png_bytep> row_ptrs(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) row_ptrs[i] = const_cast<png_bytep>(rows[i].data());

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::Io, "png encode failed: " + error);
  }
  png_set_write_fn(png, &out, write_to_vector, flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
               bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_set_rows(png, info, row_ptrs.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

}  // namespace

Bytes encode_png(const Raster& img) {
  const std::size_t stride = static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.channel_count());
  std::vector<Bytes> rows(static_cast<std::size_t>(img.height()));
  for (int y = 0; y < img.height(); ++y) {
    const auto* begin = img.data().data() + static_cast<std::size_t>(y) * stride;
    rows[static_cast<std::size_t>(y)].assign(begin, begin + stride);
  }
  const int color_type = img.channels() == Channels::Gray8 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGBA;
  return write_png(img.width(), img.height(), 8, color_type, rows);
}

Raster decode_png(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
    throw Error(ErrorCode::MalformedResponse, std::string("png decode failed: ") + image.message);
  }
  const bool gray = (image.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA)) == 0;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGBA;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  const Channels channels = gray ? Channels::Gray8 : Channels::Rgba8;
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  if (png_image_finish_read(&image, nullptr, data.data(), 0, nullptr) == 0) {
    std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::MalformedResponse, "png decode failed: " + message);
  }
  return Raster(width, height, channels, std::move(data));
}

Bytes encode_mask_png(const BinaryMask& mask) {
  const std::size_t stride = (static_cast<std::size_t>(mask.width()) + 7) / 8;
  std::vector<Bytes> rows(static_cast<std::size_t>(mask.height()), Bytes(stride, 0));
  for (int y = 0; y < mask.height(); ++y) {
    Bytes& row = rows[static_cast<std::size_t>(y)];
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.get(x, y)) row[static_cast<std::size_t>(x) / 8] |= static_cast<std::uint8_t>(0x80U >> (x % 8));
    }
  }
  return write_png(mask.width(), mask.height(), 1, PNG_COLOR_TYPE_GRAY, rows);
}

BinaryMask decode_mask_png(std::span<const std::uint8_t> bytes) {
  const Raster img = decode_png(bytes);
  BinaryMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.luma(x, y) >= 128) mask.set(x, y);
    }
  }
  return mask;
}

nlohmann::json mask_to_rle(const BinaryMask& mask) {
  nlohmann::json runs = nlohmann::json::array();
  bool current = false;
  std::size_t length = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const bool v = mask.get(x, y);
      if (v != current) {
        runs.push_back(length);
        current = v;
        length = 0;
      }
      ++length;
    }
  }
  runs.push_back(length);
  return {{"width", mask.width()}, {"height", mask.height()}, {"runs", runs}};
}

BinaryMask mask_from_rle(const nlohmann::json& rle) {
  try {
    const int width = rle.at("width").get<int>();
    const int height = rle.at("height").get<int>();
    BinaryMask mask(width, height);
    const std::size_t total = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::size_t pos = 0;
    bool value = false;
    for (const auto& run : rle.at("runs")) {
      const auto n = run.get<std::size_t>();
      if (pos + n > total) throw Error(ErrorCode::MalformedResponse, "rle runs exceed mask size");
      if (value) {
        for (std::size_t i = pos; i < pos + n; ++i) {
          mask.set(static_cast<int>(i % static_cast<std::size_t>(width)),
                   static_cast<int>(i / static_cast<std::size_t>(width)));
        }
      }
      pos += n;
      value = !value;
    }
    if (pos != total) throw Error(ErrorCode::MalformedResponse, "rle runs do not cover the mask");
    return mask;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("bad rle: ") + e.what());
  }
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Bytes base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw Error(ErrorCode::MalformedResponse, "base64 length not a multiple of 4");
  Bytes out(text.size() / 4 * 3);
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw Error(ErrorCode::MalformedResponse, "invalid base64");
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Io, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed) {
  return fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()), seed);
}

}  // namespace iconix
