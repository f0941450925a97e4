#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relax/metrics.hpp"
#include "relax/profile.hpp"

namespace relax {

// Attribution CSV: scan_id,predicted_class,true_class,r_ILM,...,r_OSRPE (4 decimals).
std::string format_attribution_csv(const std::vector<AttributionRecord>& records);
std::vector<AttributionRecord> parse_attribution_csv(const std::string& text);

// Profiles JSON: {"CLASS": {"mean": [7], "std": [7], "n": N}}, 6 decimals.
std::string format_profiles_json(const std::map<OctClass, ClassProfile>& profiles);
std::map<OctClass, ClassProfile> parse_profiles_json(const std::string& text);

struct ScoredRecord {
  std::string scan_id;
  DeviationReport report;
  FlagDecision decision;
};

// Deviation CSV: scan_id,layer,observed,difference,z,flagged. Undefined z is written as "undefined".
std::string format_deviation_csv(const std::vector<ScoredRecord>& scored);

struct DeviationRow {
  std::string scan_id;
  std::string layer;
  double observed = 0;
  double difference = 0;
};
std::vector<DeviationRow> parse_deviation_csv(const std::string& text);

// Histogram CSV: bin_left,bin_right,count.
std::string format_histogram_csv(const HistogramData& h);

// Pairs CSV: truth,predicted.
std::vector<std::pair<OctClass, OctClass>> parse_pairs_csv(const std::string& text);

std::string format_metrics_json(const ConfusionMatrix& m, const MetricsSummary& s);

// Per-scan prediction sidecar: scan_id,predicted[,truth].
struct Prediction {
  OctClass predicted;
  std::optional<OctClass> truth;
};
std::map<std::string, Prediction> parse_predictions_csv(const std::string& text);

// Export manifest: {"scans": [{"id", "acts", "grads", "labels", "predicted", "truth"?, "target"}]}.
// Relative paths resolve against the manifest's directory.
struct ManifestEntry {
  std::string id;
  std::filesystem::path acts;
  std::filesystem::path grads;
  std::filesystem::path labels;
  OctClass predicted;
  std::optional<OctClass> truth;
  int target = 0;
};
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace relax
