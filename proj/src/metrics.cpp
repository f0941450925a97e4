#include "relax/metrics.hpp"

#include <string>

#include "relax/errors.hpp"

namespace relax {

std::uint64_t ConfusionMatrix::total() const noexcept {
  std::uint64_t t = 0;
  for (const auto& row : counts)
    for (auto v : row) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t r) const noexcept {
  std::uint64_t t = 0;
  for (auto v : counts[r]) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t c) const noexcept {
  std::uint64_t t = 0;
  for (const auto& row : counts) t += row[c];
  return t;
}

ConfusionMatrix confusion(const std::vector<std::pair<OctClass, OctClass>>& pairs) {
  if (pairs.empty()) throw ValidationError("confusion matrix needs at least one record");
  ConfusionMatrix m;
  for (const auto& [truth, predicted] : pairs) {
    const auto r = index_of(truth), c = index_of(predicted);
    if (r >= kClassCount || c >= kClassCount) throw ValidationError("unknown class in record");
    ++m.counts[r][c];
  }
  return m;
}

MetricsSummary metrics(const ConfusionMatrix& m) {
  MetricsSummary s;
  const auto total = m.total();
  if (total == 0) throw ValidationError("confusion matrix is empty");

  std::uint64_t trace = 0;
  for (std::size_t c = 0; c < kClassCount; ++c) trace += m.counts[c][c];
  s.accuracy = static_cast<double>(trace) / static_cast<double>(total);

  for (std::size_t c = 0; c < kClassCount; ++c) {
    const auto name = std::string(class_name(kAllClasses[c]));
    const double tp = static_cast<double>(m.counts[c][c]);
    auto& cm = s.per_class[c];
    if (const auto col = m.col_sum(c); col > 0) {
      cm.precision = tp / static_cast<double>(col);
    } else {
      s.warnings.push_back("precision undefined for " + name + " (never predicted), using 0");
    }
    if (const auto row = m.row_sum(c); row > 0) {
      cm.recall = tp / static_cast<double>(row);
    } else {
      s.warnings.push_back("recall undefined for " + name + " (no true samples), using 0");
    }
    const double denom = cm.precision + cm.recall;
    cm.f1 = denom > 0.0 ? 2.0 * cm.precision * cm.recall / denom : 0.0;

    s.macro.precision += cm.precision;
    s.macro.recall += cm.recall;
    s.macro.f1 += cm.f1;
  }
  s.macro.precision /= kClassCount;
  s.macro.recall /= kClassCount;
  s.macro.f1 /= kClassCount;
  return s;
}

}  // namespace relax
