#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relax/attribution.hpp"
#include "relax/classes.hpp"

namespace relax {

struct AttributionRecord {
  std::string scan_id;
  OctClass predicted;
  std::optional<OctClass> truth;
  LayerAttribution attribution;
};

struct ClassProfile {
  OctClass cls;
  std::array<double, kLayerCount> mean{};
  std::array<double, kLayerCount> std{};
  std::size_t n = 0;
};

enum class StdMode { kSample, kPopulation };

struct ProfileSet {
  std::map<OctClass, ClassProfile> profiles;
  // Classes that had fewer than two correct records and were left out.
  std::vector<OctClass> skipped;
};

/// Mean and standard deviation of layer attributions per class, from records
/// with predicted == truth only.
ProfileSet build_profiles(const std::vector<AttributionRecord>& records,
                          StdMode mode = StdMode::kSample);

struct LayerDeviation {
  double observed = 0;
  double difference = 0;
  std::optional<double> z;  // empty when the profile std is zero
};

struct DeviationReport {
  std::array<LayerDeviation, kLayerCount> layers{};
};

DeviationReport deviation_report(const LayerAttribution& a, const ClassProfile& p);

inline constexpr double kDefaultFlagThreshold = 3.0;

struct FlagDecision {
  bool suspicious = false;
  double max_abs_z = 0;                   // over layers with a defined z
  std::vector<std::size_t> offending_layers;  // 0-based layer index (0 = ILM)
};

/// A layer offends when |z| >= threshold, or when z is undefined and the
/// difference is nonzero. Throws ValidationError unless threshold > 0.
FlagDecision flag(const DeviationReport& d, double threshold = kDefaultFlagThreshold);

struct HistogramBin {
  double left = 0;
  double right = 0;
  std::size_t count = 0;
};

struct HistogramData {
  double bin_width = 0;
  std::vector<HistogramBin> bins;  // contiguous, ascending, half-open [left, right)
};

/// Bins with edges at k * bin_width spanning the data range.
HistogramData deviation_histogram(const std::vector<double>& differences, double bin_width = 1.0);

/// weight(c) = max(counts) / count(c).
std::map<std::string, double> class_weights(const std::map<std::string, std::uint64_t>& counts);

}  // namespace relax
