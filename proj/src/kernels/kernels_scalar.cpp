#include <algorithm>

#include "relax/kernels.hpp"

namespace relax::kernels {
namespace {

void channel_mean(const float* x, std::size_t spatial, std::size_t channels, double* out) {
  std::fill(out, out + channels, 0.0);
  for (std::size_t s = 0; s < spatial; ++s) {
    const float* px = x + s * channels;
    for (std::size_t k = 0; k < channels; ++k) out[k] += px[k];
  }
  for (std::size_t k = 0; k < channels; ++k) out[k] /= static_cast<double>(spatial);
}

void weighted_channel_relu(const float* x, std::size_t spatial, std::size_t channels,
                           const double* alpha, double* out) {
  for (std::size_t s = 0; s < spatial; ++s) {
    const float* px = x + s * channels;
    double acc = 0.0;
    for (std::size_t k = 0; k < channels; ++k) acc += alpha[k] * px[k];
    out[s] = acc > 0.0 ? acc : 0.0;
  }
}

inline double lerp_clamped(double a, double b, double t) {
  const double v = a * (1.0 - t) + b * t;
  return std::min(std::max(v, std::min(a, b)), std::max(a, b));
}

void lerp_rows(const double* top, const double* bottom, std::size_t n, double t, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = lerp_clamped(top[i], bottom[i], t);
}

void lerp_gather(const double* row, const std::int32_t* lo, const std::int32_t* hi,
                 const double* frac, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = lerp_clamped(row[lo[i]], row[hi[i]], frac[i]);
}

void min_max(const double* x, std::size_t n, double* lo, double* hi) {
  double a = x[0], b = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    a = std::min(a, x[i]);
    b = std::max(b, x[i]);
  }
  *lo = a;
  *hi = b;
}

void affine_normalize(const double* x, std::size_t n, double lo, double range, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - lo) / range;
}

void label_masses(const double* x, const std::uint8_t* labels, std::size_t n,
                  std::array<double, 9>& masses) {
  for (std::size_t i = 0; i < n; ++i) masses[labels[i]] += x[i];
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{
      "scalar",      channel_mean,     weighted_channel_relu, lerp_rows,
      lerp_gather,   min_max,          affine_normalize,      label_masses,
  };
  return table;
}

}  // namespace relax::kernels
