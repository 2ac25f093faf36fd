#pragma once

#include <span>
#include <string>
#include <vector>

#include "blockhunter/core.hpp"

namespace blockhunter::metrics {

/// Confusion counts with the anomalous class as positive.
struct Confusion {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;
  std::uint64_t total() const { return tp + tn + fp + fn; }
};

Confusion confusion(std::span<const bool> truth, std::span<const bool> predicted);

/// Recall convention. The standard definition divides by TP+FN; the
/// alternate divides by TP+FP (mirroring precision) and exists only so both
/// conventions are computable side by side.
enum class RecallConvention { standard, precision_alias };

struct ScalarMetrics {
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;
  // A metric whose denominator was zero is reported as 0 and flagged here.
  bool accuracy_degenerate = false;
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f1_degenerate = false;
};

ScalarMetrics scalar_metrics(const Confusion& c,
                             RecallConvention rc = RecallConvention::standard);

struct RocPoint {
  double fpr = 0, tpr = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) .. (1,1), threshold descending
  double auc = 0;
};

/// Threshold sweep over unique score values (descending); tied scores are
/// grouped into a single step; AUC by the trapezoid rule.
/// Throws SingleClass when truth does not contain both classes.
RocCurve roc_auc(std::span<const double> scores, std::span<const bool> truth);

/// Everything the evaluation pipeline reports for one (model, dataset) pair.
struct MetricsReport {
  Confusion counts;
  ScalarMetrics scalars;
  RocCurve roc;

  std::string to_json() const;
  /// Single-row CSV: header + one line of the scalar fields.
  std::string to_csv() const;
  /// fpr,tpr rows for external plotting.
  std::string roc_to_csv() const;
};

MetricsReport make_report(std::span<const bool> truth,
                          std::span<const bool> predicted,
                          std::span<const double> scores,
                          RecallConvention rc = RecallConvention::standard);

}  // namespace blockhunter::metrics
