#include "helpers.hpp"

#include <cstdlib>

#include "iconix/error.hpp"

namespace iconix::test {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& prefix) {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          (prefix + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

Raster gray(int w, int h, std::uint8_t value) { return Raster(w, h, Channels::Gray8, value); }

void fill_rect(Raster& img, int x, int y, int w, int h, std::uint8_t value) {
  for (int yy = y; yy < y + h; ++yy) {
    for (int xx = x; xx < x + w; ++xx) {
      for (int c = 0; c < img.channel_count(); ++c) img.at(xx, yy, c) = c == 3 ? 255 : value;
    }
  }
}

void fill_disk(Raster& img, int cx, int cy, int r, std::uint8_t value) {
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
        for (int c = 0; c < img.channel_count(); ++c) img.at(x, y, c) = c == 3 ? 255 : value;
      }
    }
  }
}

BinaryMask mask_from_rows(const std::vector<std::string>& rows) {
  BinaryMask m(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] == '#') m.set(x, y);
    }
  }
  return m;
}

BinaryMask random_mask(int w, int h, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution on(density);
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (on(rng)) m.set(x, y);
    }
  }
  return m;
}

BinaryMask rect_mask(int w, int h, int x, int y, int rw, int rh) {
  BinaryMask m(w, h);
  for (int yy = y; yy < y + rh; ++yy) {
    for (int xx = x; xx < x + rw; ++xx) m.set(xx, yy);
  }
  return m;
}

Raster random_raster(int w, int h, Channels channels, std::mt19937_64& rng) {
  Raster r(w, h, channels);
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& v : r.data()) v = static_cast<std::uint8_t>(byte(rng));
  return r;
}

Raster one_blob(int size) {
  Raster r = gray(size, size, 255);
  fill_disk(r, size / 2, size / 2, size / 4, 0);
  return r;
}

Raster two_blobs(int size) {
  Raster r = gray(size, size, 255);
  fill_disk(r, size / 4, size / 4, size / 8, 0);
  fill_rect(r, size / 2, size / 2, size / 3, size / 3, 0);
  return r;
}

std::vector<Raster> ScriptedSimplifier::simplify(const Raster&, int step_count, int first_step) {
  ++calls_;
  if (fail_at >= first_step && fail_at < first_step + step_count) {
    throw Error(ErrorCode::BackendUnavailable, "scripted failure at step " + std::to_string(fail_at));
  }
  std::vector<Raster> out;
  for (int i = 0; i < step_count; ++i) out.push_back(script_(first_step + i));
  served_ += step_count;
  return out;
}

Raster CountingRestyler::restyle(const Raster& img, Variant variant) {
  const int index = counts_[static_cast<std::size_t>(variant)]++;
  const auto it = failures.find(variant);
  if (it != failures.end() && it->second.contains(index)) {
    throw Error(ErrorCode::BackendUnavailable, "scripted restyle failure");
  }
  return inner_->restyle(img, variant);
}

Expansion ScriptedExpander::expand(const Concept&, const std::set<std::string>& known) {
  if (fail) throw Error(ErrorCode::BackendUnavailable, "scripted expander failure");
  const auto& round = rounds_[std::min<std::size_t>(static_cast<std::size_t>(calls_), rounds_.size() - 1)];
  ++calls_;
  Expansion e;
  for (const auto& label : round) {
    if (!known.contains(label)) e.concepts.push_back(make_concept(label, ConceptSource::KnowledgeBase));
  }
  return e;
}

ScoreResult TableScorer::score(const Concept& candidate, const Concept&) {
  ++calls;
  const auto it = table.find(candidate.label);
  if (it == table.end()) return ScoreResult{{3, 4, 4, 5}, "", Category::ConcreteObject, false};
  return it->second;
}

Raster FailingGenerator::generate(const std::string& prompt, const std::optional<Raster>& condition) {
  if (calls_++ == fail_on_call_) throw Error(ErrorCode::BackendUnavailable, "scripted generator failure");
  return inner_->generate(prompt, condition);
}

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("ICONIX_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

}  // namespace iconix::test
