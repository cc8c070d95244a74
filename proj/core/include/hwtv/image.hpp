#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hwtv {

// Real-valued row-major raster. Intensities are nominally in [0,1], but any
// finite value is legal.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(std::size_t width, std::size_t height, double fill = 0.0);
  ImageBuffer(std::size_t width, std::size_t height, std::vector<double> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) noexcept { return data_[i]; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& at(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
  double at(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::vector<double>& storage() noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  bool all_finite() const noexcept;
  // Throws InvalidArgument naming `what` if any sample is NaN or infinite.
  void require_finite(std::string_view what) const;

  bool same_shape(const ImageBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

void require_same_shape(const ImageBuffer& a, const ImageBuffer& b, std::string_view context);

double dot(const ImageBuffer& a, const ImageBuffer& b);
double norm2(const ImageBuffer& a);
// ||a - b||_2
double distance2(const ImageBuffer& a, const ImageBuffer& b);

}  // namespace hwtv
