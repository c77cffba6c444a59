#include <random>

#include <benchmark/benchmark.h>

#include "iconix/backends.hpp"
#include "iconix/imaging.hpp"
#include "iconix/layering.hpp"
#include "iconix/selection.hpp"

using namespace iconix;

namespace {

std::vector<FeatureVector> random_points(int n, int dims) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<FeatureVector> out(static_cast<std::size_t>(n));
  for (auto& p : out)
    for (int j = 0; j < dims; ++j) p.values.push_back(g(rng));
  return out;
}

BinaryMask random_mask(int side, double density) {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution on(density);
  BinaryMask m(side, side);
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x)
      if (on(rng)) m.set(x, y);
  return m;
}

// A sequence's worth of 1024-d thumbnails clustered with the defaults.
void BM_KMeans(benchmark::State& state) {
  const auto points = random_points(static_cast<int>(state.range(0)), 1024);
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(points, kDefaultClusters, kDefaultSeed));
}
BENCHMARK(BM_KMeans)->Arg(20)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_ConnectedComponents(benchmark::State& state) {
  const BinaryMask m = random_mask(static_cast<int>(state.range(0)), 0.45);
  for (auto _ : state) benchmark::DoNotOptimize(connected_components(m, Connectivity::Eight));
}
BENCHMARK(BM_ConnectedComponents)->Arg(128)->Arg(512);

void BM_BuildLayeredIcon(benchmark::State& state) {
  MockGenerator generator(static_cast<int>(state.range(0)));
  MockSegmenter segmenter;
  const Raster frame = generator.generate("lighthouse", std::nullopt);
  for (auto _ : state) benchmark::DoNotOptimize(build_layered_icon(frame, segmenter));
}
BENCHMARK(BM_BuildLayeredIcon)->Arg(128)->Arg(512);

void BM_SimplifyStep(benchmark::State& state) {
  MockGenerator generator(static_cast<int>(state.range(0)));
  ReferenceSimplifier simplifier;
  const Raster frame = simplifier.step(generator.generate("lighthouse", std::nullopt), 1);
  for (auto _ : state) benchmark::DoNotOptimize(simplifier.step(frame, 40));
}
BENCHMARK(BM_SimplifyStep)->Arg(128)->Arg(512);

void BM_PerceptualDistance(benchmark::State& state) {
  MockGenerator generator(512);
  const Raster a = generator.generate("lighthouse", std::nullopt);
  const Raster b = generator.generate("hamburger", std::nullopt);
  for (auto _ : state) benchmark::DoNotOptimize(reference_perceptual_distance(a, b));
}
BENCHMARK(BM_PerceptualDistance);

}  // namespace

BENCHMARK_MAIN();
