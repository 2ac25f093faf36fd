#include "blockhunter/detectors/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blockhunter/detectors/common.hpp"

namespace blockhunter::detectors {

namespace {

// k-means++: first centroid uniform, then proportional to squared distance
// to the nearest already-chosen centroid.
std::vector<std::size_t> plusplus_seeds(const Dataset& data, std::size_t k, Rng& rng) {
  const std::size_t n = data.size();
  std::vector<std::size_t> seeds;
  seeds.reserve(k);
  seeds.push_back(rng.index(n));
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (seeds.size() < k) {
    std::size_t last = seeds.back();
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(data.row(i), data.row(last)));
      total += d2[i];
    }
    std::size_t pick;
    if (total <= 0) {
      // All remaining mass at distance zero (duplicate points): uniform.
      pick = rng.index(n);
    } else {
      double target = rng.uniform() * total;
      double acc = 0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    }
    seeds.push_back(pick);
  }
  return seeds;
}

}  // namespace

KmeansModel kmeans_fit(const Dataset& data, std::size_t k, std::size_t max_iter,
                       Rng& rng) {
  require_valid(data);
  const std::size_t n = data.size(), d = data.dim();
  if (k > n)
    throw KTooLarge("kmeans: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  if (k == 0) throw KTooLarge("kmeans: k must be at least 1");

  KmeansModel model;
  model.k = k;
  model.dim = d;
  model.trained_on = n;
  model.centroids.assign(k * d, 0.0);
  model.counts.assign(k, 0);

  for (std::size_t c = 0; auto s : plusplus_seeds(data, k, rng)) {
    auto r = data.row(s);
    std::copy(r.begin(), r.end(), model.centroids.begin() + (c++) * d);
  }

  std::vector<std::size_t> assign(n, k);  // k = unassigned sentinel
  std::vector<double> sums(k * d);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = kmeans_assign(model, data.row(i));
      if (best != assign[i]) {
        assign[i] = best;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(model.counts.begin(), model.counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = data.row(i);
      double* s = sums.data() + assign[i] * d;
      for (std::size_t j = 0; j < d; ++j) s[j] += r[j];
      ++model.counts[assign[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (model.counts[c] == 0) {
        // Reseed to the point farthest from its own centroid.
        double worst = -1;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double dist = squared_distance(data.row(i), model.centroid(assign[i]));
          if (dist > worst) {
            worst = dist;
            pick = i;
          }
        }
        auto r = data.row(pick);
        std::copy(r.begin(), r.end(), model.centroids.begin() + c * d);
        changed = true;
      } else {
        double inv = 1.0 / static_cast<double>(model.counts[c]);
        for (std::size_t j = 0; j < d; ++j)
          model.centroids[c * d + j] = sums[c * d + j] * inv;
      }
    }
    if (!changed) break;
  }

  // Final assignment pass so counts match the reported centroids.
  std::fill(model.counts.begin(), model.counts.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    ++model.counts[kmeans_assign(model, data.row(i))];
  return model;
}

std::size_t kmeans_assign(const KmeansModel& model, std::span<const double> sample) {
  if (sample.size() != model.dim)
    throw DimensionMismatch("kmeans: sample dimension " + std::to_string(sample.size()) +
                            " vs model dimension " + std::to_string(model.dim));
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.k; ++c) {
    double dist = squared_distance(sample, model.centroid(c));
    if (dist < best_d) {
      best_d = dist;
      best = c;
    }
  }
  return best;
}

double kmeans_score(const KmeansModel& model, std::span<const double> sample) {
  return std::sqrt(
      squared_distance(sample, model.centroid(kmeans_assign(model, sample))));
}

double kmeans_inertia(const KmeansModel& model, const Dataset& data) {
  double total = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto r = data.row(i);
    total += squared_distance(r, model.centroid(kmeans_assign(model, r)));
  }
  return total;
}

ModelParams KmeansModel::export_params() const {
  ModelParams p;
  p.kind = DetectorKind::kmeans;
  p.sample_count = trained_on;
  p.values = centroids;
  for (std::uint64_t c : counts) p.values.push_back(static_cast<double>(c));
  return p;
}

KmeansModel KmeansModel::from_params(const ModelParams& p, std::size_t dim,
                                     std::size_t k) {
  if (p.kind != DetectorKind::kmeans)
    throw KindMismatch("expected kmeans params");
  if (p.values.size() != k * dim + k)
    throw LengthMismatch("kmeans params: expected " + std::to_string(k * dim + k) +
                         " values, got " + std::to_string(p.values.size()));
  KmeansModel m;
  m.k = k;
  m.dim = dim;
  m.trained_on = p.sample_count;
  m.centroids.assign(p.values.begin(), p.values.begin() + k * dim);
  m.counts.reserve(k);
  for (std::size_t c = 0; c < k; ++c)
    m.counts.push_back(static_cast<std::uint64_t>(p.values[k * dim + c]));
  return m;
}

}  // namespace blockhunter::detectors
