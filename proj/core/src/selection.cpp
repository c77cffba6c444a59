#include "iconix/selection.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <random>

#include "iconix/error.hpp"

namespace iconix {

namespace {

using Points = std::span<const FeatureVector>;

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<FeatureVector> means_of(Points points, const std::vector<int>& assignments, int k) {
  const std::size_t dim = points.front().values.size();
  std::vector<FeatureVector> out(static_cast<std::size_t>(k), FeatureVector{std::vector<double>(dim, 0.0)});
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& c = out[static_cast<std::size_t>(assignments[i])].values;
    for (std::size_t d = 0; d < dim; ++d) c[d] += points[i].values[d];
    ++counts[static_cast<std::size_t>(assignments[i])];
  }
  for (std::size_t c = 0; c < out.size(); ++c) {
    if (counts[c] == 0) continue;
    for (double& v : out[c].values) v /= counts[c];
  }
  return out;
}

std::vector<FeatureVector> plus_plus_init(Points points, int k, std::mt19937_64& rng) {
  const std::size_t n = points.size();
  std::vector<std::size_t> chosen{static_cast<std::size_t>(rng() % n)};
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i], points[chosen[0]]);
  while (chosen.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      const double r = unit_uniform(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        acc += d2[i];
        pick = i;
        if (acc > r) break;
      }
    } else {
      for (std::size_t i = 0; i < n && pick == n; ++i) {
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) pick = i;
      }
    }
    chosen.push_back(pick);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points[i], points[pick]));
  }
  std::vector<FeatureVector> centroids;
  for (std::size_t i : chosen) centroids.push_back(points[i]);
  return centroids;
}

std::vector<int> assign(Points points, const std::vector<FeatureVector>& centroids) {
  std::vector<int> out(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double d = squared_distance(points[i], centroids[c]);
      if (d < best) {
        best = d;
        out[i] = static_cast<int>(c);
      }
    }
  }
  return out;
}

// Moves the point farthest from its centroid into each empty cluster.
void repair_empty(Points points, std::vector<int>& assignments, std::vector<FeatureVector>& centroids) {
  const int k = static_cast<int>(centroids.size());
  for (int c = 0; c < k; ++c) {
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int a : assignments) ++counts[static_cast<std::size_t>(a)];
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    double worst = -1.0;
    std::size_t victim = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto a = static_cast<std::size_t>(assignments[i]);
      if (counts[a] < 2) continue;
      const double d = squared_distance(points[i], centroids[a]);
      if (d > worst) {
        worst = d;
        victim = i;
      }
    }
    assignments[victim] = c;
    centroids[static_cast<std::size_t>(c)] = points[victim];
  }
}

// Single-point moves using exact mean updates; stops when no move helps.
void refine(Points points, std::vector<int>& assignments, std::vector<FeatureVector>& centroids,
            std::vector<double>& history) {
  const int k = static_cast<int>(centroids.size());
  for (int pass = 0; pass < 100; ++pass) {
    bool moved = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<int> counts(static_cast<std::size_t>(k), 0);
      for (int a : assignments) ++counts[static_cast<std::size_t>(a)];
      const int from = assignments[i];
      const double nf = counts[static_cast<std::size_t>(from)];
      if (nf < 2) continue;
      const double remove_gain = nf / (nf - 1.0) * squared_distance(points[i], centroids[static_cast<std::size_t>(from)]);
      int best = from;
      double best_delta = 0.0;
      for (int c = 0; c < k; ++c) {
        if (c == from) continue;
        const double nc = counts[static_cast<std::size_t>(c)];
        const double add_cost = nc / (nc + 1.0) * squared_distance(points[i], centroids[static_cast<std::size_t>(c)]);
        const double delta = add_cost - remove_gain;
        if (delta < best_delta - 1e-12 * (1.0 + remove_gain)) {
          best_delta = delta;
          best = c;
        }
      }
      if (best != from) {
        assignments[i] = best;
        centroids = means_of(points, assignments, k);
        moved = true;
      }
    }
    if (!moved) break;
    history.push_back(inertia_of(points, assignments, centroids));
  }
}

KMeansResult run_once(Points points, int k, std::mt19937_64& rng, int max_iter) {
  KMeansResult r;
  r.centroids = plus_plus_init(points, k, rng);
  r.assignments = assign(points, r.centroids);
  repair_empty(points, r.assignments, r.centroids);
  for (int iter = 0; iter < max_iter; ++iter) {
    r.centroids = means_of(points, r.assignments, k);
    r.inertia_history.push_back(inertia_of(points, r.assignments, r.centroids));
    std::vector<int> next = assign(points, r.centroids);
    repair_empty(points, next, r.centroids);
    if (next == r.assignments) break;
    r.assignments = std::move(next);
  }
  r.centroids = means_of(points, r.assignments, k);
  refine(points, r.assignments, r.centroids, r.inertia_history);
  r.inertia = inertia_of(points, r.assignments, r.centroids);
  return r;
}

}  // namespace

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    s += d * d;
  }
  return s;
}

double inertia_of(std::span<const FeatureVector> points, std::span<const int> assignments,
                  std::span<const FeatureVector> centroids) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += squared_distance(points[i], centroids[static_cast<std::size_t>(assignments[i])]);
  }
  return s;
}

KMeansResult kmeans(std::span<const FeatureVector> points, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
    throw Error(ErrorCode::InvalidK, "k=" + std::to_string(k) + " outside [1, " + std::to_string(points.size()) + "]");
  }
  const std::size_t dim = points.front().values.size();
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "feature vectors are empty");
  for (const auto& p : points) {
    if (p.values.size() != dim) throw Error(ErrorCode::DimensionMismatch, "feature vectors differ in length");
  }
  std::mt19937_64 rng(seed);
  KMeansResult best;
  bool have = false;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    KMeansResult candidate = run_once(points, k, rng, std::max(1, options.max_iter));
    if (!have || candidate.inertia < best.inertia) {
      best = std::move(candidate);
      have = true;
    }
  }
  return best;
}

ClusteringResult select_representatives(const SimplificationSequence& seq, std::span<const FeatureVector> features,
                                        int k, std::uint64_t seed) {
  if (features.size() != seq.frames.size()) {
    throw Error(ErrorCode::AlignmentMismatch, std::to_string(features.size()) + " feature vectors for " +
                                                  std::to_string(seq.frames.size()) + " frames");
  }
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  ClusteringResult out;
  out.k = std::min<int>(k, static_cast<int>(features.size()));
  const KMeansResult km = kmeans(features, out.k, seed);
  out.assignments = km.assignments;
  out.centroids = km.centroids;
  out.inertia = km.inertia;
  for (const Frame& f : seq.frames) out.steps.push_back(f.step);

  for (int c = 0; c < out.k; ++c) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (out.assignments[i] != c) continue;
      const double d = squared_distance(features[i], out.centroids[static_cast<std::size_t>(c)]);
      if (d < best_d || (d == best_d && seq.frames[i].step < seq.frames[static_cast<std::size_t>(best)].step)) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    out.representatives.push_back(best);
  }
  std::sort(out.representatives.begin(), out.representatives.end(), [&](int a, int b) {
    return seq.frames[static_cast<std::size_t>(a)].step < seq.frames[static_cast<std::size_t>(b)].step;
  });
  return out;
}

Scatter export_scatter(const ClusteringResult& result, std::span<const FeatureVector> features) {
  if (features.size() < 2) throw Error(ErrorCode::InvalidConfig, "scatter export needs at least two points");
  if (result.assignments.size() != features.size()) {
    throw Error(ErrorCode::AlignmentMismatch, "clustering and features are not aligned");
  }
  const auto n = static_cast<Eigen::Index>(features.size());
  const auto d = static_cast<Eigen::Index>(features.front().values.size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& v = features[static_cast<std::size_t>(i)].values;
    if (static_cast<Eigen::Index>(v.size()) != d) throw Error(ErrorCode::DimensionMismatch, "feature lengths differ");
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = v[static_cast<std::size_t>(j)];
  }
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd xc = x.rowwise() - mean;
  const double total_var = xc.squaredNorm();

  Scatter out;
  Eigen::MatrixXd components = Eigen::MatrixXd::Zero(d, 2);
  if (total_var <= 0.0) {
    out.degenerate = true;
  } else {
    // Eigen-decompose whichever of the covariance or Gram matrix is smaller.
    Eigen::MatrixXd basis;
    Eigen::VectorXd values;
    if (d <= n) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(xc.transpose() * xc);
      basis = solver.eigenvectors();
      values = solver.eigenvalues();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(xc * xc.transpose());
      basis = xc.transpose() * solver.eigenvectors();
      values = solver.eigenvalues();
    }
    const Eigen::Index m = values.size();
    for (int c = 0; c < 2 && c < m; ++c) {
      const Eigen::Index idx = m - 1 - c;
      if (values(idx) <= 1e-12 * total_var) break;
      Eigen::VectorXd v = basis.col(idx);
      v.normalize();
      Eigen::Index arg = 0;
      for (Eigen::Index j = 1; j < d; ++j) {
        if (std::abs(v(j)) > std::abs(v(arg)) + 1e-12) arg = j;
      }
      if (v(arg) < 0) v = -v;
      components.col(c) = v;
    }
  }

  const Eigen::MatrixXd projected = xc * components;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out.points.push_back(ScatterPoint{projected(i, 0), projected(i, 1), result.assignments[idx],
                                      idx < result.steps.size() ? result.steps[idx] : static_cast<int>(i)});
  }
  for (const FeatureVector& c : result.centroids) {
    Eigen::RowVectorXd row(d);
    for (Eigen::Index j = 0; j < d; ++j) row(j) = c.values[static_cast<std::size_t>(j)];
    const Eigen::RowVectorXd p = (row - mean) * components;
    out.centroids.push_back({p(0), p(1)});
  }
  return out;
}

nlohmann::json scatter_json(const Scatter& scatter) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : scatter.points) {
    points.push_back({{"x", p.x}, {"y", p.y}, {"cluster", p.cluster}, {"step", p.step}});
  }
  nlohmann::json centroids = nlohmann::json::array();
  for (const auto& c : scatter.centroids) centroids.push_back({{"x", c[0]}, {"y", c[1]}});
  return {{"points", points}, {"centroids", centroids}, {"degenerate", scatter.degenerate}};
}

nlohmann::json clustering_json(const ClusteringResult& result) {
  nlohmann::json reps = nlohmann::json::array();
  for (int r : result.representatives) {
    reps.push_back({{"frame", r}, {"step", result.steps[static_cast<std::size_t>(r)]},
                    {"cluster", result.assignments[static_cast<std::size_t>(r)]}});
  }
  return {{"k", result.k}, {"inertia", result.inertia}, {"assignments", result.assignments}, {"representatives", reps}};
}

}  // namespace iconix
