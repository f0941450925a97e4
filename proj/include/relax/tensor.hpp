#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace relax {

/// Dense row-major float32 array with an explicit shape.
///
/// Construction validates that every dimension is positive, that the payload
/// length equals the product of the shape, and that every value is finite.
class Tensor {
 public:
  Tensor(std::vector<std::size_t> shape, std::vector<float> data);

  /// Zero-filled tensor of the given shape.
  static Tensor zeros(std::vector<std::size_t> shape);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

  std::span<const float> data() const noexcept { return data_; }

  float at(std::size_t r, std::size_t c) const { return data_[r * shape_[1] + c]; }

  bool operator==(const Tensor&) const = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<float> data_;
};

std::size_t shape_product(std::span<const std::size_t> shape) noexcept;

/// Retinal region IDs as stored in label maps.
enum class Region : std::uint8_t {
  kRaR = 0,    // above retina
  kILM = 1,
  kNflIpl = 2,
  kINL = 3,
  kOPL = 4,
  kOnlIsm = 5,
  kISE = 6,
  kOsRpe = 7,
  kRbR = 8,    // below retina
};

inline constexpr std::size_t kRegionCount = 9;
inline constexpr std::size_t kLayerCount = 7;  // retinal layers ILM..OS-RPE

/// Short names of the seven retinal layers, in label order 1..7.
inline constexpr const char* kLayerNames[kLayerCount] = {
    "ILM", "NFL-IPL", "INL", "OPL", "ONL-ISM", "ISE", "OS-RPE"};

/// H x W grid of region IDs in 0..8.
class LabelMap {
 public:
  LabelMap(std::size_t height, std::size_t width, std::vector<std::uint8_t> labels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }
  std::uint8_t at(std::size_t r, std::size_t c) const { return labels_[r * width_ + c]; }

  bool operator==(const LabelMap&) const = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<std::uint8_t> labels_;
};

/// Double-precision H x W working map used between pipeline stages.
struct Plane {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> values;

  Plane() = default;
  Plane(std::size_t h, std::size_t w, std::vector<double> v);

  double at(std::size_t r, std::size_t c) const { return values[r * width + c]; }
  bool operator==(const Plane&) const = default;
};

Plane to_plane(const Tensor& t);   // rank-2 tensors only
Tensor to_tensor(const Plane& p);  // narrows to float32

/// Saliency heatmap with every value in [0, 1].
class Saliency {
 public:
  Saliency(std::size_t height, std::size_t width, std::vector<double> values);
  explicit Saliency(const Plane& plane);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double at(std::size_t r, std::size_t c) const { return values_[r * width_ + c]; }

  Plane plane() const { return Plane(height_, width_, values_); }

  bool operator==(const Saliency&) const = default;

 private:
  std::size_t height_;
  std::size_t width_;
  std::vector<double> values_;
};

}  // namespace relax
