#include "blockhunter/core.hpp"

#include <cmath>
#include <cstring>
#include <unordered_set>

namespace blockhunter {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0,1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

double Rng::exponential(double mean) {
  return -mean * std::log(1.0 - uniform());
}

Rng Rng::fork(std::uint64_t stream_id) const {
  // Derive a child seed by hashing (seed, stream_id); never touches counter_.
  std::uint64_t z = seed_ ^ (stream_id * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return Rng(z ^ (z >> 31));
}

std::vector<std::size_t> Rng::choose(std::size_t n, std::size_t k) {
  // Partial Fisher-Yates over an index vector.
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k && i < n; ++i) {
    std::size_t j = i + index(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

void Dataset::add(std::span<const double> features, std::optional<bool> anomalous) {
  if (dim_ == 0 && labels_.empty()) dim_ = features.size();
  if (features.size() != dim_ && !ragged_row_) {
    ragged_row_ = {labels_.size(), features.size()};
  }
  // Storage stays rectangular; a ragged row is padded/truncated and reported
  // by validate_dataset.
  std::size_t take = std::min(features.size(), dim_);
  values_.insert(values_.end(), features.begin(), features.begin() + take);
  values_.resize((labels_.size() + 1) * dim_, 0.0);
  labels_.push_back(!anomalous.has_value() ? Label::unlabeled
                    : (*anomalous ? Label::anomalous : Label::normal));
}

Sample Dataset::sample(std::size_t i) const {
  auto r = row(i);
  return Sample{{r.begin(), r.end()}, label_opt(i)};
}

bool Dataset::fully_labeled() const {
  for (Label l : labels_)
    if (l == Label::unlabeled) return false;
  return true;
}

std::size_t Dataset::count_anomalous() const {
  std::size_t n = 0;
  for (Label l : labels_)
    if (l == Label::anomalous) ++n;
  return n;
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  Dataset out(dim_, name_);
  for (std::size_t i : indices) out.add(row(i), label_opt(i));
  return out;
}

std::optional<ValidationIssue> validate_dataset(const Dataset& data) {
  if (data.empty()) {
    return ValidationIssue{ValidationIssue::Kind::empty_dataset, 0, 0,
                           "dataset is empty"};
  }
  if (data.ragged_row_) {
    auto [idx, got] = *data.ragged_row_;
    return ValidationIssue{ValidationIssue::Kind::dimension_mismatch, idx, 0,
                           "sample " + std::to_string(idx) + " has " +
                               std::to_string(got) + " features, expected " +
                               std::to_string(data.dim())};
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dim(); ++j) {
      if (!std::isfinite(data.at(i, j))) {
        return ValidationIssue{ValidationIssue::Kind::non_finite_value, i, j,
                               "non-finite value at sample " + std::to_string(i) +
                                   ", column " + std::to_string(j)};
      }
    }
  }
  return std::nullopt;
}

void require_valid(const Dataset& data) {
  auto issue = validate_dataset(data);
  if (!issue) return;
  switch (issue->kind) {
    case ValidationIssue::Kind::empty_dataset:
      throw EmptyDataset(issue->message);
    case ValidationIssue::Kind::non_finite_value:
      throw NonFiniteValue(issue->message);
    case ValidationIssue::Kind::dimension_mismatch:
      throw DimensionMismatch(issue->message);
  }
}

Dataset ScalerState::transform(const Dataset& data) const {
  if (data.dim() != mean.size())
    throw DimensionMismatch("scaler dimension " + std::to_string(mean.size()) +
                            " vs dataset dimension " + std::to_string(data.dim()));
  Dataset out(data.dim(), data.name());
  std::vector<double> buf(data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto r = data.row(i);
    for (std::size_t j = 0; j < data.dim(); ++j) {
      double div = stddev[j] == 0.0 ? 1.0 : stddev[j];
      buf[j] = (r[j] - mean[j]) / div;
    }
    out.add(buf, data.label_opt(i));
  }
  return out;
}

Dataset ScalerState::inverse(const Dataset& data) const {
  if (data.dim() != mean.size())
    throw DimensionMismatch("scaler dimension mismatch in inverse transform");
  Dataset out(data.dim(), data.name());
  std::vector<double> buf(data.dim());
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto r = data.row(i);
    for (std::size_t j = 0; j < data.dim(); ++j) {
      double div = stddev[j] == 0.0 ? 1.0 : stddev[j];
      buf[j] = r[j] * div + mean[j];
    }
    out.add(buf, data.label_opt(i));
  }
  return out;
}

std::pair<Dataset, ScalerState> standardize(const Dataset& data) {
  if (data.empty()) throw EmptyDataset("cannot standardize an empty dataset");
  const std::size_t n = data.size(), d = data.dim();
  ScalerState state;
  state.mean.assign(d, 0.0);
  state.stddev.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = data.row(i);
    for (std::size_t j = 0; j < d; ++j) state.mean[j] += r[j];
  }
  for (double& m : state.mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = data.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      double c = r[j] - state.mean[j];
      state.stddev[j] += c * c;
    }
  }
  for (double& s : state.stddev) s = std::sqrt(s / static_cast<double>(n));
  return {state.transform(data), state};
}

const char* to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::ned: return "ned";
    case DetectorKind::iforest: return "iforest";
    case DetectorKind::cblof: return "cblof";
    case DetectorKind::pca: return "pca";
    case DetectorKind::kmeans: return "kmeans";
  }
  return "unknown";
}

DetectorKind detector_kind_from_string(const std::string& name) {
  if (name == "ned") return DetectorKind::ned;
  if (name == "iforest" || name == "if") return DetectorKind::iforest;
  if (name == "cblof") return DetectorKind::cblof;
  if (name == "pca") return DetectorKind::pca;
  if (name == "kmeans" || name == "k-means") return DetectorKind::kmeans;
  throw ConfigInvalid("unknown detector kind: " + name);
}

}  // namespace blockhunter
