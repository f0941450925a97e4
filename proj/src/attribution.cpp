#include "relax/attribution.hpp"

#include <string>

#include "relax/errors.hpp"
#include "relax/kernels.hpp"
#include "relax/resize.hpp"

namespace relax {

LayerMasses layer_masses(const Saliency& s, const LabelMap& labels) {
  if (s.height() != labels.height() || s.width() != labels.width()) {
    throw DimensionMismatch("saliency is " + std::to_string(s.height()) + "x" + std::to_string(s.width()) +
                            ", label map is " + std::to_string(labels.height()) + "x" +
                            std::to_string(labels.width()));
  }
  LayerMasses out;
  kernels::active().label_masses(s.values().data(), labels.labels().data(), s.size(), out.m);
  return out;
}

LayerAttribution layer_attribution(const Saliency& s, const LabelMap& labels) {
  const LayerMasses masses = layer_masses(s, labels);
  double retinal = 0.0;
  for (std::size_t l = 1; l <= kLayerCount; ++l) retinal += masses.m[l];
  if (!(retinal > 0.0)) {
    throw DegenerateExplanation("no saliency mass on retinal layers ILM..OS-RPE");
  }
  LayerAttribution a;
  for (std::size_t i = 0; i < kLayerCount; ++i) a.r[i] = 100.0 * masses.m[i + 1] / retinal;
  return a;
}

LayerAttribution attribute_scan(const Saliency& s, const LabelMap& labels) {
  if (s.height() == labels.height() && s.width() == labels.width()) return layer_attribution(s, labels);
  const Saliency resized(resize_bilinear(s.plane(), labels.height(), labels.width()));
  return layer_attribution(resized, labels);
}

}  // namespace relax
