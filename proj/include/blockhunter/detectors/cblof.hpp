#pragma once

#include <span>
#include <vector>

#include "blockhunter/core.hpp"

namespace blockhunter::detectors {

/// Clustering-based outlier factor model. Clusters come from an internal
/// k-means run and are kept sorted by size (descending). Clusters up to the
/// boundary index are "large"; a point near a large cluster is scored by its
/// distance to that cluster's centroid, a point in a small cluster by its
/// distance to the closest large centroid. Both are weighted by the size of
/// the point's own cluster.
struct CblofModel {
  std::size_t k = 0;
  std::size_t dim = 0;
  std::vector<double> centroids;      // row-major k x dim, size-descending order
  std::vector<std::uint64_t> sizes;   // |F_1| >= |F_2| >= ... >= |F_k|
  std::size_t boundary = 0;           // clusters [0, boundary) are large
  double alpha = 0.9;
  double beta = 5.0;
  std::uint64_t trained_on = 0;

  std::span<const double> centroid(std::size_t i) const {
    return {centroids.data() + i * dim, dim};
  }

  /// Export layout: centroids row-major (size-descending), then sizes.
  /// alpha/beta/boundary are derived from config + sizes on import.
  ModelParams export_params() const;
  static CblofModel from_params(const ModelParams& p, std::size_t dim, std::size_t k,
                                double alpha, double beta);
};

/// Smallest 1-based index b where the cumulative size reaches alpha*n or the
/// size ratio |F_b|/|F_{b+1}| reaches beta; returned 0-based-exclusive, i.e.
/// clusters [0, b) are large.
std::size_t cblof_boundary(std::span<const std::uint64_t> sorted_sizes,
                           double alpha, double beta);

CblofModel cblof_fit(const Dataset& data, std::size_t k, double alpha, double beta,
                     Rng& rng, std::size_t max_iter = 100);

double cblof_score(const CblofModel& model, std::span<const double> sample);

}  // namespace blockhunter::detectors
