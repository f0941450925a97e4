#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relax/classes.hpp"

namespace relax {

/// Rows are the true class, columns the predicted class, in CNV, DME, DRUSEN, NORMAL order.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kClassCount>, kClassCount> counts{};

  std::uint64_t total() const noexcept;
  std::uint64_t row_sum(std::size_t r) const noexcept;
  std::uint64_t col_sum(std::size_t c) const noexcept;
};

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct MetricsSummary {
  double accuracy = 0;
  std::array<ClassMetrics, kClassCount> per_class{};
  ClassMetrics macro;
  std::vector<std::string> warnings;
};

/// Pairs are (truth, predicted).
ConfusionMatrix confusion(const std::vector<std::pair<OctClass, OctClass>>& pairs);

/// Zero-denominator classes contribute 0 and add a warning.
MetricsSummary metrics(const ConfusionMatrix& m);

}  // namespace relax
