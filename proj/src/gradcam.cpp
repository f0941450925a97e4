#include "relax/gradcam.hpp"

#include <cmath>
#include <string>

#include "relax/errors.hpp"
#include "relax/kernels.hpp"
#include "relax/resize.hpp"

namespace relax {
namespace {

void require_rank3(const Tensor& t, const char* what) {
  if (t.rank() != 3) {
    throw DimensionMismatch(std::string(what) + " must be rank 3 (Hc x Wc x K), got rank " +
                            std::to_string(t.rank()));
  }
}

}  // namespace

NeuronWeights neuron_weights(const Tensor& grads) {
  require_rank3(grads, "gradients");
  const std::size_t spatial = grads.dim(0) * grads.dim(1);
  const std::size_t channels = grads.dim(2);
  NeuronWeights w;
  w.alpha.resize(channels);
  kernels::active().channel_mean(grads.data().data(), spatial, channels, w.alpha.data());
  return w;
}

Plane gradcam_coarse(const Tensor& acts, const NeuronWeights& weights) {
  require_rank3(acts, "activations");
  if (acts.dim(2) != weights.alpha.size()) {
    throw DimensionMismatch("activations have " + std::to_string(acts.dim(2)) + " channels, weights have " +
                            std::to_string(weights.alpha.size()));
  }
  const std::size_t h = acts.dim(0), w = acts.dim(1);
  std::vector<double> out(h * w);
  kernels::active().weighted_channel_relu(acts.data().data(), h * w, acts.dim(2),
                                          weights.alpha.data(), out.data());
  return Plane(h, w, std::move(out));
}

Saliency normalize_minmax(const Plane& map) {
  const auto& k = kernels::active();
  double lo = 0, hi = 0;
  k.min_max(map.values.data(), map.values.size(), &lo, &hi);
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("map contains non-finite values");
  std::vector<double> out(map.values.size(), 0.0);
  const double range = hi - lo;
  if (range > 0.0) k.affine_normalize(map.values.data(), map.values.size(), lo, range, out.data());
  return Saliency(map.height, map.width, std::move(out));
}

Saliency normalize_minmax(const Tensor& map) { return normalize_minmax(to_plane(map)); }

Saliency compute_saliency(const Tensor& acts, const Tensor& grads, std::size_t out_h,
                          std::size_t out_w) {
  if (acts.shape() != grads.shape()) throw DimensionMismatch("activations and gradients differ in shape");
  const Plane coarse = gradcam_coarse(acts, neuron_weights(grads));
  return normalize_minmax(resize_bilinear(coarse, out_h, out_w));
}

}  // namespace relax
