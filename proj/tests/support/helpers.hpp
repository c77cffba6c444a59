#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "iconix/backends.hpp"
#include "iconix/imaging.hpp"
#include "iconix/raster.hpp"

namespace iconix::test {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "iconix");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

Raster gray(int w, int h, std::uint8_t value);
void fill_rect(Raster& img, int x, int y, int w, int h, std::uint8_t value);
void fill_disk(Raster& img, int cx, int cy, int r, std::uint8_t value);

// '#' marks a set pixel.
BinaryMask mask_from_rows(const std::vector<std::string>& rows);
BinaryMask random_mask(int w, int h, double density, std::mt19937_64& rng);
BinaryMask rect_mask(int w, int h, int x, int y, int rw, int rh);
Raster random_raster(int w, int h, Channels channels, std::mt19937_64& rng);

// One dark disk (single component) or two separated disks on white.
Raster one_blob(int size = 32);
Raster two_blobs(int size = 32);

// Frames come from a script indexed by step; counts calls and requested steps.
class ScriptedSimplifier : public Simplifier {
 public:
  explicit ScriptedSimplifier(std::function<Raster(int step)> script) : script_(std::move(script)) {}
  std::vector<Raster> simplify(const Raster& img, int step_count, int first_step) override;
  int calls() const { return calls_; }
  int steps_served() const { return served_; }
  // Throws BackendUnavailable for any request touching this step.
  int fail_at = -1;

 private:
  std::function<Raster(int)> script_;
  int calls_ = 0;
  int served_ = 0;
};

class CountingRestyler : public Restyler {
 public:
  explicit CountingRestyler(std::shared_ptr<Restyler> inner) : inner_(std::move(inner)) {}
  Raster restyle(const Raster& img, Variant variant) override;
  int calls(Variant v) const { return counts_.at(static_cast<int>(v)); }
  int total() const { return counts_[0] + counts_[1] + counts_[2]; }
  // Cell call indices (per variant, 0-based) that fail.
  std::map<Variant, std::set<int>> failures;

 private:
  std::shared_ptr<Restyler> inner_;
  std::array<int, 3> counts_{};
};

// Returns `rounds[i]` on call i (the last entry repeats), minus known labels.
class ScriptedExpander : public ConceptExpander {
 public:
  explicit ScriptedExpander(std::vector<std::vector<std::string>> rounds) : rounds_(std::move(rounds)) {}
  Expansion expand(const Concept& input, const std::set<std::string>& known) override;
  int calls() const { return calls_; }
  bool fail = false;

 private:
  std::vector<std::vector<std::string>> rounds_;
  int calls_ = 0;
};

class TableScorer : public AttributeScorer {
 public:
  std::map<std::string, ScoreResult> table;
  ScoreResult score(const Concept& candidate, const Concept& base) override;
  int calls = 0;
};

class FailingGenerator : public ImageGenerator {
 public:
  FailingGenerator(std::shared_ptr<ImageGenerator> inner, int fail_on_call)
      : inner_(std::move(inner)), fail_on_call_(fail_on_call) {}
  Raster generate(const std::string& prompt, const std::optional<Raster>& condition) override;

 private:
  std::shared_ptr<ImageGenerator> inner_;
  int fail_on_call_;
  int calls_ = 0;
};

std::uint64_t env_seed(std::uint64_t fallback = 20240601);

}  // namespace iconix::test
