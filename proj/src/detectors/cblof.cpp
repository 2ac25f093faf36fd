#include "blockhunter/detectors/cblof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "blockhunter/detectors/common.hpp"
#include "blockhunter/detectors/kmeans.hpp"

namespace blockhunter::detectors {

std::size_t cblof_boundary(std::span<const std::uint64_t> sorted_sizes,
                           double alpha, double beta) {
  std::uint64_t total = 0;
  for (std::uint64_t s : sorted_sizes) total += s;
  std::uint64_t cumulative = 0;
  for (std::size_t b = 0; b < sorted_sizes.size(); ++b) {
    cumulative += sorted_sizes[b];
    if (static_cast<double>(cumulative) >= alpha * static_cast<double>(total))
      return b + 1;
    if (b + 1 < sorted_sizes.size() && sorted_sizes[b + 1] > 0 &&
        static_cast<double>(sorted_sizes[b]) /
                static_cast<double>(sorted_sizes[b + 1]) >=
            beta)
      return b + 1;
    if (b + 1 < sorted_sizes.size() && sorted_sizes[b + 1] == 0 && sorted_sizes[b] > 0)
      return b + 1;
  }
  return sorted_sizes.size();
}

CblofModel cblof_fit(const Dataset& data, std::size_t k, double alpha, double beta,
                     Rng& rng, std::size_t max_iter) {
  if (k < 2) throw ConfigInvalid("cblof: k must be at least 2");
  if (alpha < 0.5 || alpha >= 1.0)
    throw ConfigInvalid("cblof: alpha must be in [0.5, 1)");
  if (beta <= 1.0) throw ConfigInvalid("cblof: beta must exceed 1");

  KmeansModel km = kmeans_fit(data, k, max_iter, rng);
  for (std::uint64_t c : km.counts) {
    if (c == 0)
      throw DegenerateClustering(
          "cblof: a cluster emptied and could not be reseeded");
  }

  // Sort clusters by size descending, ties by original cluster index.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return km.counts[a] > km.counts[b];
  });

  CblofModel model;
  model.k = k;
  model.dim = km.dim;
  model.alpha = alpha;
  model.beta = beta;
  model.trained_on = km.trained_on;
  model.centroids.resize(k * km.dim);
  model.sizes.resize(k);
  for (std::size_t rank = 0; rank < k; ++rank) {
    auto src = km.centroid(order[rank]);
    std::copy(src.begin(), src.end(), model.centroids.begin() + rank * km.dim);
    model.sizes[rank] = km.counts[order[rank]];
  }
  model.boundary = cblof_boundary(model.sizes, alpha, beta);
  return model;
}

double cblof_score(const CblofModel& model, std::span<const double> sample) {
  if (sample.size() != model.dim)
    throw DimensionMismatch("cblof: sample dimension mismatch");
  // Own cluster = nearest centroid overall, ties to the larger cluster.
  std::size_t own = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.k; ++c) {
    double d = squared_distance(sample, model.centroid(c));
    if (d < best) {
      best = d;
      own = c;
    }
  }
  double size = static_cast<double>(model.sizes[own]);
  if (own < model.boundary) {
    return size * std::sqrt(best);
  }
  double nearest_large = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.boundary; ++c) {
    nearest_large =
        std::min(nearest_large, squared_distance(sample, model.centroid(c)));
  }
  return size * std::sqrt(nearest_large);
}

ModelParams CblofModel::export_params() const {
  ModelParams p;
  p.kind = DetectorKind::cblof;
  p.sample_count = trained_on;
  p.values = centroids;
  for (std::uint64_t s : sizes) p.values.push_back(static_cast<double>(s));
  return p;
}

CblofModel CblofModel::from_params(const ModelParams& p, std::size_t dim,
                                   std::size_t k, double alpha, double beta) {
  if (p.kind != DetectorKind::cblof) throw KindMismatch("expected cblof params");
  if (p.values.size() != k * dim + k)
    throw LengthMismatch("cblof params: wrong length");
  CblofModel m;
  m.k = k;
  m.dim = dim;
  m.alpha = alpha;
  m.beta = beta;
  m.trained_on = p.sample_count;
  m.centroids.assign(p.values.begin(), p.values.begin() + k * dim);
  m.sizes.reserve(k);
  for (std::size_t c = 0; c < k; ++c)
    m.sizes.push_back(static_cast<std::uint64_t>(p.values[k * dim + c]));
  // Re-sort in case upstream aggregation perturbed the order.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m.sizes[a] > m.sizes[b]; });
  std::vector<double> cent(k * dim);
  std::vector<std::uint64_t> sizes(k);
  for (std::size_t rank = 0; rank < k; ++rank) {
    std::copy(m.centroids.begin() + order[rank] * dim,
              m.centroids.begin() + (order[rank] + 1) * dim,
              cent.begin() + rank * dim);
    sizes[rank] = m.sizes[order[rank]];
  }
  m.centroids = std::move(cent);
  m.sizes = std::move(sizes);
  m.boundary = cblof_boundary(m.sizes, alpha, beta);
  return m;
}

}  // namespace blockhunter::detectors
