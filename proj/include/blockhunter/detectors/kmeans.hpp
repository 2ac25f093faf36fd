#pragma once

#include <span>
#include <vector>

#include "blockhunter/core.hpp"

namespace blockhunter::detectors {

/// Centroid model; the anomaly score of a point is its Euclidean distance to
/// the nearest centroid.
struct KmeansModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;       // row-major k x dim
  std::vector<std::uint64_t> counts;   // points assigned per centroid at convergence
  std::uint64_t trained_on = 0;

  std::span<const double> centroid(std::size_t i) const {
    return {centroids.data() + i * dim, dim};
  }

  /// Export layout: centroids row-major, then counts (as doubles).
  ModelParams export_params() const;
  static KmeansModel from_params(const ModelParams& p, std::size_t dim, std::size_t k);
};

/// Lloyd iterations from k-means++ seeding until assignments are stable or
/// max_iter is hit. Empty clusters are reseeded to the point farthest from
/// its current centroid. Deterministic given the rng.
KmeansModel kmeans_fit(const Dataset& data, std::size_t k, std::size_t max_iter,
                       Rng& rng);

double kmeans_score(const KmeansModel& model, std::span<const double> sample);

/// Assignment of one point: nearest centroid, ties to the lowest index.
std::size_t kmeans_assign(const KmeansModel& model, std::span<const double> sample);

/// Total within-cluster squared distance for the given dataset.
double kmeans_inertia(const KmeansModel& model, const Dataset& data);

}  // namespace blockhunter::detectors
