#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <thread>

#include "helpers.hpp"
#include "iconix/artifacts.hpp"
#include "iconix/codec.hpp"
#include "iconix/error.hpp"

using namespace iconix;

namespace {

Bytes bytes_of(std::string_view s) { return Bytes(s.begin(), s.end()); }

}  // namespace

TEST(Png, RoundTripsGrayAndRgba) {
  std::mt19937_64 rng(9);
  for (Channels ch : {Channels::Gray8, Channels::Rgba8}) {
    const Raster r = test::random_raster(17, 11, ch, rng);
    const Bytes png = encode_png(r);
    EXPECT_EQ(decode_png(png), r);
    EXPECT_EQ(encode_png(r), png);
  }
}

TEST(Png, GarbageIsMalformed) {
  try {
    decode_png(bytes_of("definitely not a png"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedResponse);
  }
}

TEST(MaskCodec, PngAndRunLengthRoundTrip) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryMask m = test::random_mask(13 + trial, 7 + trial, 0.3, rng);
    EXPECT_EQ(decode_mask_png(encode_mask_png(m)), m);
    EXPECT_EQ(mask_from_rle(mask_to_rle(m)), m);
  }
}

TEST(MaskCodec, RunLengthStartsWithUnsetRun) {
  const BinaryMask m = test::mask_from_rows({"##.", "..."});
  const auto rle = mask_to_rle(m);
  EXPECT_EQ(rle.at("width"), 3);
  EXPECT_EQ(rle.at("height"), 2);
  EXPECT_EQ(rle.at("runs"), nlohmann::json({0, 2, 4}));
}

TEST(Base64, KnownVectors) {
  const std::pair<std::string_view, std::string_view> cases[] = {
      {"", ""}, {"f", "Zg=="}, {"fo", "Zm8="}, {"foo", "Zm9v"}, {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, encoded] : cases) {
    EXPECT_EQ(base64_encode(bytes_of(plain)), encoded);
    EXPECT_EQ(base64_decode(encoded), bytes_of(plain));
  }
  EXPECT_THROW(base64_decode("@@@"), Error);
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex(bytes_of("abc")), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(ArtifactStore, ContentAddressedAndDeduplicated) {
  test::TempDir dir;
  ArtifactStore store(dir.path());
  const Raster r = test::one_blob();
  const std::string a = store.put_raster(r);
  const std::string b = store.put_raster(r);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(ArtifactStore::valid_ref(a));
  EXPECT_EQ(store.get_raster(a), r);
  EXPECT_EQ(store.refs().size(), 1u);
  const std::string j = store.put_json({{"k", 1}});
  EXPECT_TRUE(store.is_json(j));
  EXPECT_EQ(store.get_json(j), nlohmann::json({{"k", 1}}));
}

TEST(ArtifactStore, MissingAndTampered) {
  test::TempDir dir;
  ArtifactStore store(dir.path());
  try {
    store.get(std::string(64, 'a'));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
  const std::string ref = store.put_raster(test::two_blobs());
  {
    std::fstream f(store.path_of(ref), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.put('\x7f');
  }
  try {
    store.get(ref);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptStore);
  }
}

TEST(ArtifactStore, ConcurrentAppends) {
  test::TempDir dir;
  ArtifactStore store(dir.path());
  std::vector<std::thread> threads;
  std::vector<std::string> refs(16);
  for (int t = 0; t < 16; ++t) {
    threads.emplace_back([&, t] {
      Raster r = test::gray(8, 8, static_cast<std::uint8_t>(t % 4));
      refs[static_cast<std::size_t>(t)] = store.put_raster(r);
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(store.refs().size(), 4u);
  for (int t = 0; t < 16; ++t) EXPECT_EQ(refs[static_cast<std::size_t>(t)], refs[static_cast<std::size_t>(t % 4)]);
}
