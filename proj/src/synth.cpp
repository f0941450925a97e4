#include "relax/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "relax/errors.hpp"

namespace relax::synth {

Xorshift64Star::Xorshift64Star(std::uint64_t seed) noexcept
    : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ull) {}

std::uint64_t Xorshift64Star::next() noexcept {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1Dull;
}

double Xorshift64Star::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Xorshift64Star::below(std::uint64_t n) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
}

std::pair<Saliency, LabelMap> generate(const SynthSpec& spec) {
  if (spec.height == 0 || spec.width == 0) throw ValidationError("synthetic image size must be positive");
  const std::size_t band_total = std::accumulate(spec.bands.begin(), spec.bands.end(), std::size_t{0});
  if (band_total != spec.height) {
    throw ValidationError("band heights sum to " + std::to_string(band_total) + ", image height is " +
                          std::to_string(spec.height));
  }

  std::vector<std::uint8_t> labels(spec.height * spec.width);
  std::size_t row = 0;
  for (std::size_t l = 0; l < kRegionCount; ++l) {
    for (std::size_t i = 0; i < spec.bands[l]; ++i, ++row) {
      std::fill_n(labels.begin() + static_cast<std::ptrdiff_t>(row * spec.width), spec.width,
                  static_cast<std::uint8_t>(l));
    }
  }

  std::vector<Blob> blobs = spec.blobs;
  Xorshift64Star rng(spec.seed);
  const double max_sigma = static_cast<double>(std::max(spec.height, spec.width)) / 4.0 + 1.0;
  for (std::size_t b = 0; b < spec.random_blobs; ++b) {
    Blob blob;
    blob.row = rng.uniform(0.0, static_cast<double>(spec.height));
    blob.col = rng.uniform(0.0, static_cast<double>(spec.width));
    blob.sigma = rng.uniform(1.0, max_sigma);
    blob.amplitude = rng.uniform(0.5, 1.0);
    blobs.push_back(blob);
  }
  for (const auto& b : blobs) {
    if (!(b.sigma > 0.0) || !(b.amplitude >= 0.0) || !std::isfinite(b.row) || !std::isfinite(b.col)) {
      throw ValidationError("blob needs sigma > 0, amplitude >= 0 and a finite center");
    }
  }

  std::vector<double> sal(spec.height * spec.width, 0.0);
  for (std::size_t r = 0; r < spec.height; ++r) {
    for (std::size_t c = 0; c < spec.width; ++c) {
      double v = 0.0;
      for (const auto& b : blobs) {
        const double dr = static_cast<double>(r) - b.row;
        const double dc = static_cast<double>(c) - b.col;
        v += b.amplitude * std::exp(-(dr * dr + dc * dc) / (2.0 * b.sigma * b.sigma));
      }
      sal[r * spec.width + c] = v;
    }
  }
  const double peak = *std::max_element(sal.begin(), sal.end());
  if (peak > 0.0) {
    for (double& v : sal) v = std::min(v / peak, 1.0);
  }
  return {Saliency(spec.height, spec.width, std::move(sal)), LabelMap(spec.height, spec.width, std::move(labels))};
}

SynthSpec equal_bands(std::size_t height, std::size_t width, std::uint64_t seed) {
  SynthSpec spec;
  spec.height = height;
  spec.width = width;
  spec.seed = seed;
  for (std::size_t l = 0; l < kRegionCount; ++l) {
    spec.bands[l] = height / kRegionCount + (l < height % kRegionCount ? 1 : 0);
  }
  return spec;
}

std::pair<Saliency, LabelMap> fuzz_pair(Xorshift64Star& rng, std::size_t max_dim) {
  const std::size_t h = 1 + rng.below(max_dim);
  const std::size_t w = 1 + rng.below(max_dim);
  std::vector<double> sal(h * w);
  std::vector<std::uint8_t> labels(h * w);
  for (std::size_t i = 0; i < h * w; ++i) {
    labels[i] = static_cast<std::uint8_t>(rng.below(kRegionCount));
    sal[i] = rng.uniform();
  }
  const std::size_t anchor = rng.below(h * w);
  labels[anchor] = static_cast<std::uint8_t>(1 + rng.below(kLayerCount));
  sal[anchor] = rng.uniform(0.1, 1.0);
  return {Saliency(h, w, std::move(sal)), LabelMap(h, w, std::move(labels))};
}

Tensor random_tensor(Xorshift64Star& rng, std::vector<std::size_t> shape, float lo, float hi) {
  std::vector<float> data(shape_product(shape));
  for (float& v : data) v = static_cast<float>(rng.uniform(lo, hi));
  return Tensor(std::move(shape), std::move(data));
}

LayerAttribution brute_force_attribution(const Saliency& s, const LabelMap& labels) {
  if (s.height() != labels.height() || s.width() != labels.width()) {
    throw DimensionMismatch("saliency and label map sizes differ");
  }
  const std::size_t rows = s.height(), cols = s.width();
  // S(i, r, c) as a one-hot indicator.
  const auto onehot = [&](std::size_t i, std::size_t r, std::size_t c) {
    return labels.at(r, c) == i ? 1.0 : 0.0;
  };

  double denominator = 0.0;
  for (std::size_t l = 1; l <= 7; ++l)
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) denominator += onehot(l, r, c) * s.at(r, c);
  if (!(denominator > 0.0)) throw DegenerateExplanation("no saliency mass on retinal layers");

  LayerAttribution out;
  for (std::size_t i = 1; i <= 7; ++i) {
    double numerator = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) numerator += onehot(i, r, c) * s.at(r, c);
    out.r[i - 1] = 100.0 * numerator / denominator;
  }
  return out;
}

Plane brute_force_gradcam(const Tensor& acts, const Tensor& grads) {
  if (acts.rank() != 3 || acts.shape() != grads.shape()) {
    throw DimensionMismatch("activations and gradients must share a rank-3 shape");
  }
  const std::size_t rows = acts.dim(0), cols = acts.dim(1), depth = acts.dim(2);
  const auto a = acts.data();
  const auto g = grads.data();
  const auto idx = [&](std::size_t r, std::size_t c, std::size_t k) { return (r * cols + c) * depth + k; };

  std::vector<double> alpha(depth, 0.0);
  for (std::size_t k = 0; k < depth; ++k) {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) alpha[k] += g[idx(r, c, k)];
    alpha[k] /= static_cast<double>(rows * cols);
  }

  std::vector<double> out(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      for (std::size_t k = 0; k < depth; ++k) v += alpha[k] * a[idx(r, c, k)];
      out[r * cols + c] = std::max(0.0, v);
    }
  }
  return Plane(rows, cols, std::move(out));
}

}  // namespace relax::synth
