#include "relax/resize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relax/errors.hpp"
#include "relax/kernels.hpp"

namespace relax {
namespace {

// Source taps for one axis under the half-pixel-center convention.
struct AxisTaps {
  std::vector<std::int32_t> lo;
  std::vector<std::int32_t> hi;
  std::vector<double> frac;
};

AxisTaps axis_taps(std::size_t in, std::size_t out) {
  AxisTaps taps;
  taps.lo.resize(out);
  taps.hi.resize(out);
  taps.frac.resize(out);
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  const double last = static_cast<double>(in - 1);
  for (std::size_t d = 0; d < out; ++d) {
    const double src = std::clamp((static_cast<double>(d) + 0.5) * scale - 0.5, 0.0, last);
    const auto i0 = static_cast<std::size_t>(std::floor(src));
    taps.lo[d] = static_cast<std::int32_t>(i0);
    taps.hi[d] = static_cast<std::int32_t>(std::min(i0 + 1, in - 1));
    taps.frac[d] = src - static_cast<double>(i0);
  }
  return taps;
}

}  // namespace

Plane resize_bilinear(const Plane& in, std::size_t out_h, std::size_t out_w) {
  if (in.height == 0 || in.width == 0) throw ValidationError("resize input is empty");
  if (out_h == 0 || out_w == 0) throw ValidationError("resize output size must be positive");
  if (in.width > INT32_MAX) throw ValidationError("resize input too wide");

  const auto& k = kernels::active();
  const AxisTaps rows = axis_taps(in.height, out_h);
  const AxisTaps cols = axis_taps(in.width, out_w);

  std::vector<double> out(out_h * out_w);
  std::vector<double> blended(in.width);
  for (std::size_t y = 0; y < out_h; ++y) {
    const double* top = in.values.data() + static_cast<std::size_t>(rows.lo[y]) * in.width;
    const double* bottom = in.values.data() + static_cast<std::size_t>(rows.hi[y]) * in.width;
    k.lerp_rows(top, bottom, in.width, rows.frac[y], blended.data());
    k.lerp_gather(blended.data(), cols.lo.data(), cols.hi.data(), cols.frac.data(), out_w,
                  out.data() + y * out_w);
  }
  return Plane(out_h, out_w, std::move(out));
}

Tensor resize_bilinear(const Tensor& t, std::size_t out_h, std::size_t out_w) {
  if (t.rank() != 2) {
    throw DimensionMismatch("resize_bilinear expects a rank-2 tensor, got rank " +
                            std::to_string(t.rank()));
  }
  return to_tensor(resize_bilinear(to_plane(t), out_h, out_w));
}

}  // namespace relax
