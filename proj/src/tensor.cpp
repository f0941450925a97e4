#include "relax/tensor.hpp"

#include <cmath>
#include <string>

#include "relax/errors.hpp"

namespace relax {

std::size_t shape_product(std::span<const std::size_t> shape) noexcept {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<float> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty()) throw ValidationError("tensor shape is empty");
  if (shape_.size() > 255) throw ValidationError("tensor rank exceeds 255");
  for (std::size_t d : shape_) {
    if (d == 0) throw ValidationError("tensor has a zero-sized dimension");
  }
  const std::size_t expected = shape_product(shape_);
  if (expected != data_.size()) {
    throw ValidationError("tensor payload has " + std::to_string(data_.size()) +
                          " values, shape requires " + std::to_string(expected));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw ValidationError("tensor value at index " + std::to_string(i) + " is not finite");
    }
  }
}

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
  std::vector<float> data(shape_product(shape), 0.0f);
  return Tensor(std::move(shape), std::move(data));
}

LabelMap::LabelMap(std::size_t height, std::size_t width, std::vector<std::uint8_t> labels)
    : height_(height), width_(width), labels_(std::move(labels)) {
  if (height_ == 0 || width_ == 0) throw ValidationError("label map dimensions must be positive");
  if (labels_.size() != height_ * width_) throw ValidationError("label map size does not match H x W");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] >= kRegionCount) {
      throw ValidationError("label " + std::to_string(labels_[i]) + " at index " +
                            std::to_string(i) + " is outside 0..8");
    }
  }
}

Plane::Plane(std::size_t h, std::size_t w, std::vector<double> v)
    : height(h), width(w), values(std::move(v)) {
  if (h == 0 || w == 0) throw ValidationError("plane dimensions must be positive");
  if (values.size() != h * w) throw ValidationError("plane size does not match H x W");
}

Plane to_plane(const Tensor& t) {
  if (t.rank() != 2) {
    throw DimensionMismatch("expected a rank-2 tensor, got rank " + std::to_string(t.rank()));
  }
  auto d = t.data();
  return Plane(t.dim(0), t.dim(1), std::vector<double>(d.begin(), d.end()));
}

Tensor to_tensor(const Plane& p) {
  std::vector<float> data(p.values.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<float>(p.values[i]);
  return Tensor({p.height, p.width}, std::move(data));
}

Saliency::Saliency(std::size_t height, std::size_t width, std::vector<double> values)
    : height_(height), width_(width), values_(std::move(values)) {
  if (height_ == 0 || width_ == 0) throw ValidationError("saliency dimensions must be positive");
  if (values_.size() != height_ * width_) throw ValidationError("saliency size does not match H x W");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("saliency value at index " + std::to_string(i) + " is outside [0, 1]");
    }
  }
}

Saliency::Saliency(const Plane& plane) : Saliency(plane.height, plane.width, plane.values) {}

}  // namespace relax
