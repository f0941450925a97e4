// Compiled with -mavx2. Only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "relax/kernels.hpp"

namespace relax::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void channel_mean(const float* x, std::size_t spatial, std::size_t channels, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= channels; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t s = 0; s < spatial; ++s) {
      acc = _mm256_add_pd(acc, _mm256_cvtps_pd(_mm_loadu_ps(x + s * channels + k)));
    }
    _mm256_storeu_pd(out + k, _mm256_div_pd(acc, _mm256_set1_pd(static_cast<double>(spatial))));
  }
  for (; k < channels; ++k) {
    double acc = 0.0;
    for (std::size_t s = 0; s < spatial; ++s) acc += x[s * channels + k];
    out[k] = acc / static_cast<double>(spatial);
  }
}

void weighted_channel_relu(const float* x, std::size_t spatial, std::size_t channels,
                           const double* alpha, double* out) {
  for (std::size_t s = 0; s < spatial; ++s) {
    const float* px = x + s * channels;
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= channels; k += 4) {
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(alpha + k),
                                             _mm256_cvtps_pd(_mm_loadu_ps(px + k))));
    }
    double sum = hsum(acc);
    for (; k < channels; ++k) sum += alpha[k] * px[k];
    out[s] = sum > 0.0 ? sum : 0.0;
  }
}

inline __m256d lerp_clamped(__m256d a, __m256d b, __m256d t) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d v = _mm256_add_pd(_mm256_mul_pd(a, _mm256_sub_pd(one, t)), _mm256_mul_pd(b, t));
  return _mm256_min_pd(_mm256_max_pd(v, _mm256_min_pd(a, b)), _mm256_max_pd(a, b));
}

inline double lerp_clamped(double a, double b, double t) {
  const double v = a * (1.0 - t) + b * t;
  return std::min(std::max(v, std::min(a, b)), std::max(a, b));
}

void lerp_rows(const double* top, const double* bottom, std::size_t n, double t, double* out) {
  const __m256d vt = _mm256_set1_pd(t);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, lerp_clamped(_mm256_loadu_pd(top + i), _mm256_loadu_pd(bottom + i), vt));
  }
  for (; i < n; ++i) out[i] = lerp_clamped(top[i], bottom[i], t);
}

void lerp_gather(const double* row, const std::int32_t* lo, const std::int32_t* hi,
                 const double* frac, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i ilo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(lo + i));
    const __m128i ihi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(hi + i));
    const __m256d a = _mm256_i32gather_pd(row, ilo, 8);
    const __m256d b = _mm256_i32gather_pd(row, ihi, 8);
    _mm256_storeu_pd(out + i, lerp_clamped(a, b, _mm256_loadu_pd(frac + i)));
  }
  for (; i < n; ++i) out[i] = lerp_clamped(row[lo[i]], row[hi[i]], frac[i]);
}

void min_max(const double* x, std::size_t n, double* lo, double* hi) {
  std::size_t i = 0;
  double a = x[0], b = x[0];
  if (n >= 4) {
    __m256d vlo = _mm256_loadu_pd(x);
    __m256d vhi = vlo;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(x + i);
      vlo = _mm256_min_pd(vlo, v);
      vhi = _mm256_max_pd(vhi, v);
    }
    alignas(32) double l[4], h[4];
    _mm256_store_pd(l, vlo);
    _mm256_store_pd(h, vhi);
    a = std::min({l[0], l[1], l[2], l[3]});
    b = std::max({h[0], h[1], h[2], h[3]});
  }
  for (; i < n; ++i) {
    a = std::min(a, x[i]);
    b = std::max(b, x[i]);
  }
  *lo = a;
  *hi = b;
}

void affine_normalize(const double* x, std::size_t n, double lo, double range, double* out) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vr = _mm256_set1_pd(range);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), vlo), vr));
  }
  for (; i < n; ++i) out[i] = (x[i] - lo) / range;
}

void label_masses(const double* x, const std::uint8_t* labels, std::size_t n,
                  std::array<double, 9>& masses) {
  __m256d acc[9];
  __m256i ids[9];
  for (int l = 0; l < 9; ++l) {
    acc[l] = _mm256_setzero_pd();
    ids[l] = _mm256_set1_epi64x(l);
  }
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    std::int32_t packed;
    std::copy_n(labels + i, 4, reinterpret_cast<std::uint8_t*>(&packed));
    const __m256i lab = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256d v = _mm256_loadu_pd(x + i);
    for (int l = 0; l < 9; ++l) {
      const __m256d mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(lab, ids[l]));
      acc[l] = _mm256_add_pd(acc[l], _mm256_and_pd(mask, v));
    }
  }
  for (int l = 0; l < 9; ++l) masses[l] += hsum(acc[l]);
  for (; i < n; ++i) masses[labels[i]] += x[i];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",        channel_mean,     weighted_channel_relu, lerp_rows,
      lerp_gather,   min_max,          affine_normalize,      label_masses,
  };
  return table;
}

}  // namespace relax::kernels
