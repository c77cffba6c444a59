#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "iconix/simplification.hpp"
#include "iconix/types.hpp"

namespace iconix {

inline constexpr int kDefaultClusters = 9;
inline constexpr std::uint64_t kDefaultSeed = 42;

struct KMeansOptions {
  int max_iter = 100;
  // Independent k-means++ restarts; the lowest final inertia wins.
  int restarts = 10;
};

struct KMeansResult {
  std::vector<int> assignments;
  std::vector<FeatureVector> centroids;
  double inertia = 0.0;
  // Inertia after every centroid update of the winning restart, in order.
  std::vector<double> inertia_history;
};

double squared_distance(const FeatureVector& a, const FeatureVector& b);

// Sum of squared distances of points to their assigned centroids.
double inertia_of(std::span<const FeatureVector> points, std::span<const int> assignments,
                  std::span<const FeatureVector> centroids);

// k-means++ seeding from a seeded generator, Lloyd iterations until the
// assignment is stable, then single-point moves while any lowers the inertia.
// Empty clusters take the point farthest from its centroid. Deterministic for
// fixed (points, k, seed). Throws InvalidK, DimensionMismatch.
KMeansResult kmeans(std::span<const FeatureVector> points, int k, std::uint64_t seed,
                    const KMeansOptions& options = {});

struct ClusteringResult {
  int k = 0;
  std::vector<int> assignments;  // by frame index
  std::vector<FeatureVector> centroids;
  double inertia = 0.0;
  std::vector<int> representatives;  // frame indices, ascending by step
  std::vector<int> steps;            // step of each frame, for reporting
};

// Clusters the frames (effective k = min(k, frames)) and picks, per cluster,
// the member nearest its centroid (ties: smaller step).
ClusteringResult select_representatives(const SimplificationSequence& seq, std::span<const FeatureVector> features,
                                        int k = kDefaultClusters, std::uint64_t seed = kDefaultSeed);

struct ScatterPoint {
  double x;
  double y;
  int cluster;
  int step;
};

struct Scatter {
  std::vector<ScatterPoint> points;
  std::vector<std::array<double, 2>> centroids;
  bool degenerate = false;
};

// Projects features and centroids onto the top two principal components
// (mean-centered; each component's largest-magnitude loading positive).
Scatter export_scatter(const ClusteringResult& result, std::span<const FeatureVector> features);

nlohmann::json scatter_json(const Scatter& scatter);
nlohmann::json clustering_json(const ClusteringResult& result);

}  // namespace iconix
