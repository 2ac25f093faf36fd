#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blockhunter {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BLOCKHUNTER_ERROR_TYPE(Name)      \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

BLOCKHUNTER_ERROR_TYPE(DimensionMismatch)
BLOCKHUNTER_ERROR_TYPE(NonFiniteValue)
BLOCKHUNTER_ERROR_TYPE(EmptyDataset)
BLOCKHUNTER_ERROR_TYPE(DivergedLoss)
BLOCKHUNTER_ERROR_TYPE(SubsampleTooLarge)
BLOCKHUNTER_ERROR_TYPE(DegenerateClustering)
BLOCKHUNTER_ERROR_TYPE(RankCollapse)
BLOCKHUNTER_ERROR_TYPE(KTooLarge)
BLOCKHUNTER_ERROR_TYPE(LengthMismatch)
BLOCKHUNTER_ERROR_TYPE(KindMismatch)
BLOCKHUNTER_ERROR_TYPE(EmptyFederation)
BLOCKHUNTER_ERROR_TYPE(UnlabeledData)
BLOCKHUNTER_ERROR_TYPE(SingleClass)
BLOCKHUNTER_ERROR_TYPE(TooFewFactories)
BLOCKHUNTER_ERROR_TYPE(EmptyCluster)
BLOCKHUNTER_ERROR_TYPE(EmptyTrace)
BLOCKHUNTER_ERROR_TYPE(ConfigInvalid)
BLOCKHUNTER_ERROR_TYPE(FileNotFound)
BLOCKHUNTER_ERROR_TYPE(SchemaMismatch)
BLOCKHUNTER_ERROR_TYPE(TooManyMalformedRows)

#undef BLOCKHUNTER_ERROR_TYPE

// ---------------------------------------------------------------------------
// Rng — counter-based generator (splitmix64). Every component derives its own
// stream from a master seed via fork(), so results do not depend on thread
// scheduling or call interleaving between components.
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), counter_(0) {}

  std::uint64_t seed() const { return seed_; }

  /// Next raw 64-bit value in the stream.
  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). n must be > 0.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal deviate (Box-Muller, pair cached).
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Exponential deviate with the given mean.
  double exponential(double mean);

  /// Independent stream derived from (seed, stream_id). Does not advance
  /// this generator.
  Rng fork(std::uint64_t stream_id) const;

  /// k distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> choose(std::size_t n, std::size_t k);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[index(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Samples and datasets
// ---------------------------------------------------------------------------

/// Tri-state per-sample label.
enum class Label : std::int8_t { unlabeled = -1, normal = 0, anomalous = 1 };

struct Sample {
  std::vector<double> features;
  std::optional<bool> anomalous;  // empty when unlabeled
};

struct ValidationIssue;

/// Fixed-width numeric table with optional binary labels. Row storage is
/// contiguous; rows are exposed as spans. Immutable once built (all fit and
/// score operations take const references).
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::size_t dim, std::string name = "")
      : dim_(dim), name_(std::move(name)) {}

  void add(std::span<const double> features,
           std::optional<bool> anomalous = std::nullopt);
  void add(const Sample& s) { add(s.features, s.anomalous); }

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return labels_.empty(); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  double at(std::size_t i, std::size_t j) const { return values_[i * dim_ + j]; }
  Label label(std::size_t i) const { return labels_[i]; }
  std::optional<bool> label_opt(std::size_t i) const {
    return labels_[i] == Label::unlabeled
               ? std::nullopt
               : std::optional<bool>(labels_[i] == Label::anomalous);
  }
  Sample sample(std::size_t i) const;

  bool fully_labeled() const;
  std::size_t count_anomalous() const;

  /// Subset by row index, preserving order of `indices`.
  Dataset select(std::span<const std::size_t> indices) const;

  const std::vector<double>& raw_values() const { return values_; }

 private:
  friend std::optional<ValidationIssue> validate_dataset(const Dataset&);

  std::size_t dim_ = 0;
  std::string name_;
  std::vector<double> values_;  // row-major, size() * dim()
  std::vector<Label> labels_;
  // First row added with the wrong width, if any (index, observed width).
  std::optional<std::pair<std::size_t, std::size_t>> ragged_row_;
};

struct ValidationIssue {
  enum class Kind { dimension_mismatch, non_finite_value, empty_dataset };
  Kind kind;
  std::size_t index = 0;   // offending sample
  std::size_t column = 0;  // offending feature (non_finite_value only)
  std::string message;
};

/// std::nullopt when every dataset invariant holds.
std::optional<ValidationIssue> validate_dataset(const Dataset& data);

/// Throws the matching error type if validate_dataset reports an issue.
void require_valid(const Dataset& data);

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

/// Per-column (mean, sd) captured at fit time; population sd convention.
/// Columns with zero sd divide by 1, so they map to all-zeros.
struct ScalerState {
  std::vector<double> mean;
  std::vector<double> stddev;  // as measured; 0 for constant columns

  Dataset transform(const Dataset& data) const;
  Dataset inverse(const Dataset& data) const;
};

std::pair<Dataset, ScalerState> standardize(const Dataset& data);

// ---------------------------------------------------------------------------
// Model parameter exchange
// ---------------------------------------------------------------------------

enum class DetectorKind { ned, iforest, cblof, pca, kmeans };

const char* to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(const std::string& name);

/// Flat numeric snapshot of a fitted model, the unit of federated exchange.
/// The value layout is fixed per detector kind and documented next to each
/// model's export function.
struct ModelParams {
  std::vector<double> values;
  std::uint64_t sample_count = 0;
  DetectorKind kind = DetectorKind::ned;
  int round = 0;
};

}  // namespace blockhunter
