#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace relax::cli {

namespace fs = std::filesystem;

struct AttributeArgs {
  fs::path saliency_dir;
  fs::path labels_dir;
  fs::path out;
  std::optional<fs::path> predictions;
  std::optional<fs::path> manifest;
  std::size_t jobs = 0;  // 0: hardware concurrency
};

struct ProfileArgs {
  fs::path records;
  fs::path out;
  bool population_std = false;
};

struct ScoreArgs {
  fs::path records;
  fs::path profiles;
  double threshold = 3.0;
  fs::path out;
};

struct HistogramArgs {
  fs::path scores;
  double bin_width = 1.0;
  std::optional<std::string> layer;
  fs::path out;
};

struct OverlayArgs {
  fs::path saliency;
  std::optional<fs::path> labels;
  std::optional<fs::path> scan;
  double alpha = 0.5;
  fs::path out;
};

struct MetricsArgs {
  fs::path pairs;
  fs::path out;
};

struct GradcamArgs {
  fs::path acts;
  fs::path grads;
  std::size_t height = 0;
  std::size_t width = 0;
  fs::path out;
};

struct SynthArgs {
  std::uint64_t seed = 0;
  std::size_t height = 0;
  std::size_t width = 0;
  std::string bands;  // nine comma-separated heights; empty: equal split
  std::string blobs;  // "row,col,sigma,amp;..."
  std::size_t random_blobs = 0;
  fs::path out_dir;
};

void run_attribute(const AttributeArgs& a);
void run_profile(const ProfileArgs& a);
void run_score(const ScoreArgs& a);
void run_histogram(const HistogramArgs& a);
void run_overlay(const OverlayArgs& a);
void run_metrics(const MetricsArgs& a);
void run_gradcam(const GradcamArgs& a);
void run_synth(const SynthArgs& a);

}  // namespace relax::cli
