#include "blockhunter/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace blockhunter::metrics {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Confusion confusion(std::span<const bool> truth, std::span<const bool> predicted) {
  if (truth.size() != predicted.size())
    throw LengthMismatch("confusion: " + std::to_string(truth.size()) + " labels vs " +
                         std::to_string(predicted.size()) + " predictions");
  Confusion c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] && predicted[i]) ++c.tp;
    else if (truth[i] && !predicted[i]) ++c.fn;
    else if (!truth[i] && predicted[i]) ++c.fp;
    else ++c.tn;
  }
  return c;
}

ScalarMetrics scalar_metrics(const Confusion& c, RecallConvention rc) {
  ScalarMetrics m;
  auto ratio = [](double num, double den, double& out, bool& degenerate) {
    if (den == 0) {
      out = 0;
      degenerate = true;
    } else {
      out = num / den;
    }
  };
  double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
  ratio(tp + tn, tp + tn + fp + fn, m.accuracy, m.accuracy_degenerate);
  ratio(tp, tp + fp, m.precision, m.precision_degenerate);
  if (rc == RecallConvention::standard)
    ratio(tp, tp + fn, m.recall, m.recall_degenerate);
  else
    ratio(tp, tp + fp, m.recall, m.recall_degenerate);
  ratio(2 * tp, 2 * tp + fn + fp, m.f1, m.f1_degenerate);
  return m;
}

RocCurve roc_auc(std::span<const double> scores, std::span<const bool> truth) {
  if (scores.size() != truth.size())
    throw LengthMismatch("roc_auc: score/label length mismatch");
  std::size_t pos = 0;
  for (bool t : truth) pos += t ? 1 : 0;
  std::size_t neg = truth.size() - pos;
  if (pos == 0 || neg == 0)
    throw SingleClass("roc_auc requires both classes present");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::uint64_t tp = 0, fp = 0;
  double auc = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    // One step per group of tied scores.
    double s = scores[order[i]];
    std::uint64_t dtp = 0, dfp = 0;
    while (i < order.size() && scores[order[i]] == s) {
      if (truth[order[i]]) ++dtp; else ++dfp;
      ++i;
    }
    double fpr0 = static_cast<double>(fp) / static_cast<double>(neg);
    double tpr0 = static_cast<double>(tp) / static_cast<double>(pos);
    tp += dtp;
    fp += dfp;
    double fpr1 = static_cast<double>(fp) / static_cast<double>(neg);
    double tpr1 = static_cast<double>(tp) / static_cast<double>(pos);
    auc += (fpr1 - fpr0) * (tpr0 + tpr1) / 2.0;
    curve.points.push_back({fpr1, tpr1});
  }
  curve.auc = auc;
  return curve;
}

MetricsReport make_report(std::span<const bool> truth, std::span<const bool> predicted,
                          std::span<const double> scores, RecallConvention rc) {
  MetricsReport r;
  r.counts = confusion(truth, predicted);
  r.scalars = scalar_metrics(r.counts, rc);
  r.roc = roc_auc(scores, truth);
  return r;
}

std::string MetricsReport::to_json() const {
  std::string s = "{";
  s += "\"tp\":" + std::to_string(counts.tp);
  s += ",\"tn\":" + std::to_string(counts.tn);
  s += ",\"fp\":" + std::to_string(counts.fp);
  s += ",\"fn\":" + std::to_string(counts.fn);
  s += ",\"accuracy\":" + fmt_double(scalars.accuracy);
  s += ",\"precision\":" + fmt_double(scalars.precision);
  s += ",\"recall\":" + fmt_double(scalars.recall);
  s += ",\"f1\":" + fmt_double(scalars.f1);
  s += ",\"auc\":" + fmt_double(roc.auc);
  s += ",\"roc_points\":" + std::to_string(roc.points.size());
  s += "}";
  return s;
}

std::string MetricsReport::to_csv() const {
  std::string s = "tp,tn,fp,fn,accuracy,precision,recall,f1,auc\n";
  s += std::to_string(counts.tp) + "," + std::to_string(counts.tn) + "," +
       std::to_string(counts.fp) + "," + std::to_string(counts.fn) + "," +
       fmt_double(scalars.accuracy) + "," + fmt_double(scalars.precision) + "," +
       fmt_double(scalars.recall) + "," + fmt_double(scalars.f1) + "," +
       fmt_double(roc.auc) + "\n";
  return s;
}

std::string MetricsReport::roc_to_csv() const {
  std::string s = "fpr,tpr\n";
  for (const auto& p : roc.points)
    s += fmt_double(p.fpr) + "," + fmt_double(p.tpr) + "\n";
  return s;
}

}  // namespace blockhunter::metrics
