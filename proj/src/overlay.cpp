#include "relax/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relax/errors.hpp"
#include "relax/tensor_io.hpp"

namespace relax {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("overlay alpha must be in [0, 1]");
}

void check_dims(const Saliency& s, std::size_t h, std::size_t w) {
  if (s.height() != h || s.width() != w) {
    throw DimensionMismatch("saliency is " + std::to_string(s.height()) + "x" + std::to_string(s.width()) +
                            ", base image is " + std::to_string(h) + "x" + std::to_string(w));
  }
}

template <typename BaseColor>
RgbImage blend(const Saliency& s, double alpha, BaseColor&& base_at) {
  RgbImage img{s.height(), s.width(), std::vector<std::uint8_t>(3 * s.size())};
  const auto vals = s.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const std::array<double, 3> heat = jet(vals[i]);
    const std::array<double, 3> base = base_at(i);
    for (std::size_t ch = 0; ch < 3; ++ch) {
      const double v = (1.0 - alpha) * base[ch] + alpha * 255.0 * heat[ch];
      img.pixels[3 * i + ch] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return img;
}

}  // namespace

std::array<double, 3> jet(double v) noexcept {
  v = std::clamp(v, 0.0, 1.0);
  const auto ramp = [v](double center) { return std::clamp(1.5 - std::abs(4.0 * v - center), 0.0, 1.0); };
  return {ramp(3.0), ramp(2.0), ramp(1.0)};
}

RgbImage render_overlay(const Saliency& s, const LabelMap& base, double alpha) {
  check_alpha(alpha);
  check_dims(s, base.height(), base.width());
  const auto labels = base.labels();
  return blend(s, alpha, [&](std::size_t i) {
    const Rgb& c = kLayerPalette[labels[i]];
    return std::array<double, 3>{double(c[0]), double(c[1]), double(c[2])};
  });
}

RgbImage render_overlay(const Saliency& s, const Tensor& gray, double alpha) {
  check_alpha(alpha);
  if (gray.rank() != 2) throw DimensionMismatch("grayscale base must be a rank-2 tensor");
  check_dims(s, gray.dim(0), gray.dim(1));
  const auto g = gray.data();
  return blend(s, alpha, [&](std::size_t i) {
    const double v = std::round(255.0 * std::clamp(static_cast<double>(g[i]), 0.0, 1.0));
    return std::array<double, 3>{v, v, v};
  });
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& img) {
  const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.pixels.begin(), img.pixels.end());
  return out;
}

void write_ppm(const RgbImage& img, const std::filesystem::path& path) { write_file(encode_ppm(img), path); }

}  // namespace relax
