#include "hwtv/image.hpp"

#include <cmath>
#include <string>

#include "hwtv/error.hpp"

namespace hwtv {

namespace {

void check_dims(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw InvalidArgument("image dimensions must be positive, got " + std::to_string(width) +
                          "x" + std::to_string(height));
  }
}

}  // namespace

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(width * height, fill);
}

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != width * height) {
    throw InvalidArgument("image data length " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

bool ImageBuffer::all_finite() const noexcept {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void ImageBuffer::require_finite(std::string_view what) const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw InvalidArgument(std::string(what) + ": non-finite sample at index " +
                            std::to_string(i));
    }
  }
}

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b, std::string_view context) {
  if (!a.same_shape(b)) {
    throw DimensionMismatch(std::string(context) + ": " + std::to_string(a.width()) + "x" +
                            std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                            "x" + std::to_string(b.height()));
  }
}

double dot(const ImageBuffer& a, const ImageBuffer& b) {
  require_same_shape(a, b, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const ImageBuffer& a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

double distance2(const ImageBuffer& a, const ImageBuffer& b) {
  require_same_shape(a, b, "distance2");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace hwtv
