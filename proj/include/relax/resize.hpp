#pragma once

#include <cstddef>

#include "relax/tensor.hpp"

namespace relax {

/// Bilinear resampling with half-pixel centers.
///
/// Output pixel (y, x) samples the source at
///   sy = clamp((y + 0.5) * in_h / out_h - 0.5, 0, in_h - 1)
/// and likewise for x. Each output value is a convex combination of at most
/// four source values, so the output range never exceeds the input range, and
/// resizing to the same size reproduces the input exactly.
Plane resize_bilinear(const Plane& in, std::size_t out_h, std::size_t out_w);

/// Tensor overload; `t` must be rank 2.
Tensor resize_bilinear(const Tensor& t, std::size_t out_h, std::size_t out_w);

}  // namespace relax
