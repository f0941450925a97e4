#pragma once

#include <array>

#include "relax/tensor.hpp"

namespace relax {

/// Saliency mass per region ID 0..8.
struct LayerMasses {
  std::array<double, kRegionCount> m{};
};

/// Percentage of retinal saliency mass on each of layers ILM..OS-RPE.
/// Entries are non-negative and sum to 100.
struct LayerAttribution {
  std::array<double, kLayerCount> r{};
};

LayerMasses layer_masses(const Saliency& s, const LabelMap& labels);

/// R_i = 100 * m_i / (m_1 + ... + m_7). Regions 0 and 8 are excluded from both
/// numerator and denominator. Throws DegenerateExplanation when that
/// denominator is zero and DimensionMismatch when the grids differ.
LayerAttribution layer_attribution(const Saliency& s, const LabelMap& labels);

/// Attribution evaluated on the label map's grid; the saliency is bilinearly
/// resampled first when its size differs.
LayerAttribution attribute_scan(const Saliency& s, const LabelMap& labels);

}  // namespace relax
