#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "hwtv/image.hpp"

namespace hwtv {

// Per-pixel pair (horizontal, vertical) of a 2n-vector such as Du, t or rho_t.
struct GradientField {
  GradientField() = default;
  GradientField(std::size_t width, std::size_t height)
      : width(width), height(height), h(width * height, 0.0), v(width * height, 0.0) {}

  std::size_t size() const noexcept { return h.size(); }
  bool same_shape(const ImageBuffer& img) const noexcept {
    return width == img.width() && height == img.height();
  }
  bool all_finite() const noexcept;

  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> h;
  std::vector<double> v;
};

double dot(const GradientField& a, const GradientField& b);

// Pixelwise norm used by TV: p = 1 is anisotropic |h| + |v|, p = 2 is
// isotropic sqrt(h^2 + v^2).
enum class TvNorm { Anisotropic = 1, Isotropic = 2 };

inline double pixel_norm(double h, double v, TvNorm p) noexcept;

ImageBuffer gradient_norms(const GradientField& g, TvNorm p);

// Gaussian point-spread function. `band` is the full side length of the
// square support; `identity` selects K = I (pure denoising).
struct BlurSpec {
  int band = 1;
  double sigma = 1.0;
  bool identity = true;

  static BlurSpec none() { return {}; }
  static BlurSpec gaussian(int band, double sigma) { return {band, sigma, false}; }
};

// band x band taps, row-major, summing to one. Offset (dx, dy) in
// [-radius, radius]^2 lives at index (dy + radius) * band + (dx + radius).
struct BlurKernel {
  int band = 1;
  std::vector<double> taps{1.0};

  int radius() const noexcept { return band / 2; }
  double at(int dx, int dy) const noexcept {
    return taps[static_cast<std::size_t>((dy + radius()) * band + (dx + radius()))];
  }
};

// Throws InvalidArgument for an even or nonpositive band, or sigma <= 0.
BlurKernel make_kernel(const BlurSpec& spec);

// Periodic forward differences:
//   h(x,y) = u(x+1 mod W, y) - u(x,y),  v(x,y) = u(x, y+1 mod H) - u(x,y).
GradientField gradient(const ImageBuffer& u);

// D^T t, the exact adjoint of gradient(). This is minus the usual discrete
// divergence.
ImageBuffer divergence(const GradientField& t);

// Circular convolution K u, computed spectrally. Identity spec returns u.
// Throws InvalidArgument if the kernel is larger than the image.
ImageBuffer blur_apply(const ImageBuffer& u, const BlurSpec& spec);
// K^T u (circular correlation with the same kernel).
ImageBuffer blur_adjoint(const ImageBuffer& u, const BlurSpec& spec);

// Mean over the periodic (2r+1)x(2r+1) window centred at each pixel.
// Requires 2r+1 <= min(width, height).
ImageBuffer box_mean(const ImageBuffer& values, int r);

inline double pixel_norm(double h, double v, TvNorm p) noexcept {
  return p == TvNorm::Anisotropic ? std::abs(h) + std::abs(v) : std::sqrt(h * h + v * v);
}

}  // namespace hwtv
