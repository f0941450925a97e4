#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "relax/attribution.hpp"
#include "relax/tensor.hpp"

namespace relax::synth {

/// xorshift64* (Marsaglia shifts 12/25/27, multiplier 0x2545F4914F6CDD1D).
/// A zero seed is remapped to a fixed nonzero state.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

 private:
  std::uint64_t state_;
};

struct Blob {
  double row = 0;  // center, pixels
  double col = 0;
  double sigma = 1;
  double amplitude = 1;
};

struct SynthSpec {
  std::size_t height = 0;
  std::size_t width = 0;
  std::array<std::size_t, kRegionCount> bands{};  // band heights, top to bottom, labels 0..8
  std::vector<Blob> blobs;                        // placed as given
  std::size_t random_blobs = 0;                   // extra blobs drawn from the seed
  std::uint64_t seed = 0;
};

/// Horizontal bands 0..8 top to bottom; saliency is a sum of Gaussian blobs
/// divided by its maximum (all zeros if the sum is zero).
std::pair<Saliency, LabelMap> generate(const SynthSpec& spec);

/// Spec with nine bands as equal as possible (remainder goes to the top bands).
SynthSpec equal_bands(std::size_t height, std::size_t width, std::uint64_t seed);

/// Random saliency/label pair with independent per-pixel labels, sizes in
/// [1, max_dim]. At least one pixel is on a retinal layer with positive saliency.
std::pair<Saliency, LabelMap> fuzz_pair(Xorshift64Star& rng, std::size_t max_dim);

/// Random tensor with values uniform in [lo, hi).
Tensor random_tensor(Xorshift64Star& rng, std::vector<std::size_t> shape, float lo, float hi);

/// Literal nested-loop transcription of the layer attribution formula, kept
/// independent from the production path for use as a test oracle.
LayerAttribution brute_force_attribution(const Saliency& s, const LabelMap& labels);

/// Loop transcription of GradCAM's pooled-gradient weighting and ReLU, in double.
Plane brute_force_gradcam(const Tensor& acts, const Tensor& grads);

}  // namespace relax::synth
