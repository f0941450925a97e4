#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace relax::kernels {

/// Inner loops shared by the pipeline. Every entry has a portable scalar
/// reference and, where the host supports it, a vectorized variant. Variants
/// are interchangeable: bilinear passes and normalization are bit-identical,
/// reductions agree to summation-order rounding.
struct KernelTable {
  std::string_view name;

  // out[k] = mean over `spatial` rows of x[s * channels + k]
  void (*channel_mean)(const float* x, std::size_t spatial, std::size_t channels, double* out);

  // out[s] = max(0, sum_k alpha[k] * x[s * channels + k])
  void (*weighted_channel_relu)(const float* x, std::size_t spatial, std::size_t channels,
                                const double* alpha, double* out);

  // out[i] = top[i] * (1 - t) + bottom[i] * t, clamped to [min, max] of the pair
  void (*lerp_rows)(const double* top, const double* bottom, std::size_t n, double t, double* out);

  // out[i] = row[lo[i]] * (1 - frac[i]) + row[hi[i]] * frac[i], clamped likewise
  void (*lerp_gather)(const double* row, const std::int32_t* lo, const std::int32_t* hi,
                      const double* frac, std::size_t n, double* out);

  void (*min_max)(const double* x, std::size_t n, double* lo, double* hi);

  // out[i] = (x[i] - lo) / range
  void (*affine_normalize)(const double* x, std::size_t n, double lo, double range, double* out);

  // masses[l] += sum of x[i] where labels[i] == l, for l in 0..8
  void (*label_masses)(const double* x, const std::uint8_t* labels, std::size_t n,
                       std::array<double, 9>& masses);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();

/// Best table for this host. Setting RELAX_KERNELS=scalar forces the reference path.
const KernelTable& active();

}  // namespace relax::kernels
