#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include "relax/attribution.hpp"
#include "relax/errors.hpp"
#include "relax/gradcam.hpp"
#include "relax/metrics.hpp"
#include "relax/overlay.hpp"
#include "relax/profile.hpp"
#include "relax/records_io.hpp"
#include "relax/synth.hpp"
#include "relax/tensor_io.hpp"

namespace relax::cli {
namespace {

Saliency load_saliency(const fs::path& path) {
  const Tensor t = read_tensor(path);
  if (t.rank() != 2) throw ValidationError(path.string() + ": saliency must be a rank-2 tensor");
  try {
    return Saliency(to_plane(t));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

// Runs fn(i) for i in [0, n) on a bounded pool. The first failure by index is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(n, 1));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("'" + s + "' is not a number");
}

}  // namespace

void run_attribute(const AttributeArgs& a) {
  if (a.predictions.has_value() == a.manifest.has_value()) {
    throw ValidationError("attribute needs exactly one of --predictions or --manifest");
  }
  std::map<std::string, Prediction> predictions;
  if (a.predictions) {
    predictions = parse_predictions_csv(read_text(*a.predictions));
  } else {
    for (const auto& e : read_manifest(*a.manifest)) predictions.emplace(e.id, Prediction{e.predicted, e.truth});
  }

  if (!fs::is_directory(a.saliency_dir)) throw IoError("not a directory: " + a.saliency_dir.string());
  if (!fs::is_directory(a.labels_dir)) throw IoError("not a directory: " + a.labels_dir.string());
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(a.saliency_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".rlt") ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  if (ids.empty()) throw ValidationError("no .rlt saliency maps in " + a.saliency_dir.string());

  std::vector<AttributionRecord> records(ids.size());
  parallel_for(ids.size(), a.jobs, [&](std::size_t i) {
    const auto& id = ids[i];
    const auto pred = predictions.find(id);
    if (pred == predictions.end()) throw ValidationError("no prediction for scan '" + id + "'");
    const Saliency s = load_saliency(a.saliency_dir / (id + ".rlt"));
    const LabelMap labels = read_labelmap(a.labels_dir / (id + ".pgm"));
    try {
      records[i] = {id, pred->second.predicted, pred->second.truth, attribute_scan(s, labels)};
    } catch (const ValidationError& e) {
      throw ValidationError("scan '" + id + "': " + e.what());
    }
  });
  write_text(format_attribution_csv(records), a.out);
}

void run_profile(const ProfileArgs& a) {
  const auto records = parse_attribution_csv(read_text(a.records));
  for (const auto& r : records) {
    if (!r.truth) throw ValidationError("record '" + r.scan_id + "' has no true_class");
  }
  const ProfileSet set = build_profiles(records, a.population_std ? StdMode::kPopulation : StdMode::kSample);
  for (OctClass c : set.skipped) {
    std::cerr << "warning: class " << class_name(c) << " has fewer than 2 correct records; no profile written\n";
  }
  write_text(format_profiles_json(set.profiles), a.out);
}

void run_score(const ScoreArgs& a) {
  if (!(a.threshold > 0.0)) throw ValidationError("--threshold must be positive");
  const auto records = parse_attribution_csv(read_text(a.records));
  const auto profiles = parse_profiles_json(read_text(a.profiles));
  std::vector<ScoredRecord> scored;
  std::size_t suspicious = 0;
  for (const auto& r : records) {
    const auto p = profiles.find(r.predicted);
    if (p == profiles.end()) {
      std::cerr << "warning: no profile for class " << class_name(r.predicted) << "; skipping " << r.scan_id << "\n";
      continue;
    }
    const DeviationReport rep = deviation_report(r.attribution, p->second);
    const FlagDecision dec = flag(rep, a.threshold);
    suspicious += dec.suspicious;
    scored.push_back({r.scan_id, rep, dec});
  }
  write_text(format_deviation_csv(scored), a.out);
  std::cout << scored.size() << " scored, " << suspicious << " flagged for review\n";
}

void run_histogram(const HistogramArgs& a) {
  std::vector<double> diffs;
  for (const auto& row : parse_deviation_csv(read_text(a.scores))) {
    if (!a.layer || row.layer == *a.layer) diffs.push_back(row.difference);
  }
  write_text(format_histogram_csv(deviation_histogram(diffs, a.bin_width)), a.out);
}

void run_overlay(const OverlayArgs& a) {
  if (a.labels.has_value() == a.scan.has_value()) throw ValidationError("overlay needs exactly one of --labels or --scan");
  const Saliency s = load_saliency(a.saliency);
  const RgbImage img = a.labels ? render_overlay(s, read_labelmap(*a.labels), a.alpha)
                                : render_overlay(s, read_tensor(*a.scan), a.alpha);
  write_ppm(img, a.out);
}

void run_metrics(const MetricsArgs& a) {
  const ConfusionMatrix m = confusion(parse_pairs_csv(read_text(a.pairs)));
  const MetricsSummary s = metrics(m);
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
  write_text(format_metrics_json(m, s), a.out);
}

void run_gradcam(const GradcamArgs& a) {
  if (a.height == 0 || a.width == 0) throw ValidationError("--height and --width must be positive");
  const Saliency s = compute_saliency(read_tensor(a.acts), read_tensor(a.grads), a.height, a.width);
  write_tensor(to_tensor(s.plane()), a.out);
}

void run_synth(const SynthArgs& a) {
  synth::SynthSpec spec = synth::equal_bands(a.height, a.width, a.seed);
  if (!a.bands.empty()) {
    const auto parts = split(a.bands, ',');
    if (parts.size() != kRegionCount) throw ValidationError("--bands needs nine comma-separated heights");
    for (std::size_t i = 0; i < kRegionCount; ++i) {
      const double v = to_double(parts[i]);
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw ValidationError("band height '" + parts[i] + "' is not a non-negative integer");
      }
      spec.bands[i] = static_cast<std::size_t>(v);
    }
  }
  for (const auto& b : split(a.blobs, ';')) {
    const auto f = split(b, ',');
    if (f.size() != 4) throw ValidationError("blob '" + b + "' needs row,col,sigma,amplitude");
    spec.blobs.push_back({to_double(f[0]), to_double(f[1]), to_double(f[2]), to_double(f[3])});
  }
  spec.random_blobs = a.random_blobs;
  const auto [saliency, labels] = synth::generate(spec);
  fs::create_directories(a.out_dir);
  write_tensor(to_tensor(saliency.plane()), a.out_dir / "saliency.rlt");
  write_labelmap(labels, a.out_dir / "labels.pgm");
}

}  // namespace relax::cli
