#pragma once

#include <cstddef>
#include <vector>

#include "relax/tensor.hpp"

namespace relax {

/// Per-channel importance weights from pooled gradients.
struct NeuronWeights {
  std::vector<double> alpha;
};

/// Global average pool of a Hc x Wc x K gradient stack over its spatial axes.
NeuronWeights neuron_weights(const Tensor& grads);

/// ReLU of the alpha-weighted sum of the K activation maps. Returns Hc x Wc.
Plane gradcam_coarse(const Tensor& acts, const NeuronWeights& weights);

/// Min-max rescale to [0, 1]. A constant map becomes all zeros.
Saliency normalize_minmax(const Plane& map);
Saliency normalize_minmax(const Tensor& map);

/// Full GradCAM: pool gradients, combine activations, upsample to
/// out_h x out_w, then min-max normalize.
Saliency compute_saliency(const Tensor& acts, const Tensor& grads, std::size_t out_h,
                          std::size_t out_w);

}  // namespace relax
