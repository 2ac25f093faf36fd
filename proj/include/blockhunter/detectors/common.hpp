#pragma once

#include <span>
#include <vector>

#include "blockhunter/core.hpp"

namespace blockhunter::detectors {

/// Flags the top ceil(contamination * n) scores as anomalous; ties are
/// resolved in favor of the earlier index.
std::vector<bool> score_to_label(std::span<const double> scores,
                                 double contamination);

/// Flags exactly min(k, n) highest scores, same tie rule.
std::vector<bool> score_top_k(std::span<const double> scores, std::size_t k);

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

}  // namespace blockhunter::detectors
