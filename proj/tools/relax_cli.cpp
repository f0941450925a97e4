// relax: region-level saliency attribution, profiling and review flagging.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "relax/errors.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace relax::cli;

  CLI::App app{"Retinal layer attribution toolkit"};
  app.require_subcommand(1);

  AttributeArgs attribute;
  auto* cmd = app.add_subcommand("attribute", "Per-layer attribution for every saliency map in a directory");
  cmd->add_option("--saliency-dir", attribute.saliency_dir, "Directory of <scan_id>.rlt saliency maps")->required();
  cmd->add_option("--labels-dir", attribute.labels_dir, "Directory of <scan_id>.pgm label maps")->required();
  cmd->add_option("--out", attribute.out, "Output CSV")->required();
  cmd->add_option("--predictions", attribute.predictions, "CSV of scan_id,predicted[,truth]");
  cmd->add_option("--manifest", attribute.manifest, "Export manifest JSON supplying predictions");
  cmd->add_option("--jobs", attribute.jobs, "Worker threads (0 = all cores)");
  cmd->callback([&] { run_attribute(attribute); });

  ProfileArgs profile;
  cmd = app.add_subcommand("profile", "Per-class mean/std profiles from correctly classified records");
  cmd->add_option("--records", profile.records, "Attribution CSV")->required();
  cmd->add_option("--out", profile.out, "Output JSON")->required();
  cmd->add_flag("--population-std", profile.population_std, "Use the n denominator instead of n-1");
  cmd->callback([&] { run_profile(profile); });

  ScoreArgs score;
  cmd = app.add_subcommand("score", "Deviation report and review flag per record");
  cmd->add_option("--records", score.records, "Attribution CSV")->required();
  cmd->add_option("--profiles", score.profiles, "Profiles JSON")->required();
  cmd->add_option("--threshold", score.threshold, "Flag when |z| >= threshold")->capture_default_str();
  cmd->add_option("--out", score.out, "Output deviation CSV")->required();
  cmd->callback([&] { run_score(score); });

  HistogramArgs histogram;
  cmd = app.add_subcommand("histogram", "Histogram of deviations from the class mean");
  cmd->add_option("--scores", histogram.scores, "Deviation CSV from `score`")->required();
  cmd->add_option("--bin-width", histogram.bin_width, "Bin width in percentage points")->capture_default_str();
  cmd->add_option("--layer", histogram.layer, "Only rows for this layer (e.g. ILM)");
  cmd->add_option("--out", histogram.out, "Output CSV")->required();
  cmd->callback([&] { run_histogram(histogram); });

  OverlayArgs overlay;
  cmd = app.add_subcommand("overlay", "Blend a saliency heatmap over a label map or scan");
  cmd->add_option("--saliency", overlay.saliency, "Saliency RLT")->required();
  cmd->add_option("--labels", overlay.labels, "Label map PGM base");
  cmd->add_option("--scan", overlay.scan, "Grayscale RLT base, intensities in [0, 1]");
  cmd->add_option("--alpha", overlay.alpha, "Heatmap weight in [0, 1]")->capture_default_str();
  cmd->add_option("--out", overlay.out, "Output PPM")->required();
  cmd->callback([&] { run_overlay(overlay); });

  MetricsArgs metrics;
  cmd = app.add_subcommand("metrics", "Confusion matrix, accuracy, precision, recall and F1");
  cmd->add_option("--pairs", metrics.pairs, "CSV of truth,predicted")->required();
  cmd->add_option("--out", metrics.out, "Output JSON")->required();
  cmd->callback([&] { run_metrics(metrics); });

  GradcamArgs gradcam;
  cmd = app.add_subcommand("gradcam", "Saliency map from exported activations and gradients");
  cmd->add_option("--acts", gradcam.acts, "Activations RLT (Hc x Wc x K)")->required();
  cmd->add_option("--grads", gradcam.grads, "Gradients RLT (Hc x Wc x K)")->required();
  cmd->add_option("--height", gradcam.height, "Output height")->required();
  cmd->add_option("--width", gradcam.width, "Output width")->required();
  cmd->add_option("--out", gradcam.out, "Output saliency RLT")->required();
  cmd->callback([&] { run_gradcam(gradcam); });

  SynthArgs synth;
  cmd = app.add_subcommand("synth", "Seeded banded label map and blob saliency pair");
  cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();
  cmd->add_option("--height", synth.height, "Image height")->required();
  cmd->add_option("--width", synth.width, "Image width")->required();
  cmd->add_option("--bands", synth.bands, "Nine band heights, top to bottom");
  cmd->add_option("--blobs", synth.blobs, "row,col,sigma,amplitude;...");
  cmd->add_option("--random-blobs", synth.random_blobs, "Blobs drawn from the seed")->capture_default_str();
  cmd->add_option("--out-dir", synth.out_dir, "Writes saliency.rlt and labels.pgm here")->required();
  cmd->callback([&] { run_synth(synth); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const relax::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const relax::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
