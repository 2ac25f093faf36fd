#include "blockhunter/detectors/common.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blockhunter::detectors {

std::vector<bool> score_top_k(std::span<const double> scores, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  std::vector<bool> flags(scores.size(), false);
  for (std::size_t i = 0; i < k && i < order.size(); ++i) flags[order[i]] = true;
  return flags;
}

std::vector<bool> score_to_label(std::span<const double> scores,
                                 double contamination) {
  for (double s : scores)
    if (!std::isfinite(s)) throw NonFiniteValue("score_to_label: non-finite score");
  auto k = static_cast<std::size_t>(
      std::ceil(contamination * static_cast<double>(scores.size())));
  return score_top_k(scores, k);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace blockhunter::detectors
