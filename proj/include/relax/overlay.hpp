#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "relax/tensor.hpp"

namespace relax {

using Rgb = std::array<std::uint8_t, 3>;

/// Fixed colors for region IDs 0..8.
inline constexpr std::array<Rgb, kRegionCount> kLayerPalette = {{
    {0x20, 0x20, 0x20},  // RaR
    {0xE6, 0x19, 0x4B},  // ILM
    {0x3C, 0xB4, 0x4B},  // NFL-IPL
    {0xFF, 0xE1, 0x19},  // INL
    {0x43, 0x63, 0xD8},  // OPL
    {0xF5, 0x82, 0x31},  // ONL-ISM
    {0x91, 0x1E, 0xB4},  // ISE
    {0x46, 0xF0, 0xF0},  // OS-RPE
    {0x80, 0x80, 0x80},  // RbR
}};

/// Jet colormap, v clamped to [0, 1].
std::array<double, 3> jet(double v) noexcept;

struct RgbImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<std::uint8_t> pixels;  // interleaved RGB, row-major

  Rgb at(std::size_t r, std::size_t c) const {
    const std::size_t i = 3 * (r * width + c);
    return {pixels[i], pixels[i + 1], pixels[i + 2]};
  }
  bool operator==(const RgbImage&) const = default;
};

/// pixel = round((1 - alpha) * base + alpha * jet(saliency)).
RgbImage render_overlay(const Saliency& s, const LabelMap& base, double alpha);

/// Grayscale base: values are intensities in [0, 1] (clamped).
RgbImage render_overlay(const Saliency& s, const Tensor& gray, double alpha);

std::vector<std::uint8_t> encode_ppm(const RgbImage& img);
void write_ppm(const RgbImage& img, const std::filesystem::path& path);

}  // namespace relax
