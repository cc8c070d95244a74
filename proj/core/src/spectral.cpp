#include "hwtv/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "hwtv/error.hpp"

namespace hwtv {

SpectralPlan build_plan(std::size_t width, std::size_t height, const BlurSpec& spec) {
  if (width == 0 || height == 0) throw InvalidArgument("spectral plan needs positive dimensions");
  const BlurKernel kernel = make_kernel(spec);
  if (static_cast<std::size_t>(kernel.band) > width ||
      static_cast<std::size_t>(kernel.band) > height) {
    throw InvalidArgument("blur kernel " + std::to_string(kernel.band) + "x" +
                          std::to_string(kernel.band) + " is larger than image " +
                          std::to_string(width) + "x" + std::to_string(height));
  }

  SpectralPlan plan;
  plan.width_ = width;
  plan.height_ = height;
  plan.identity_ = spec.identity;
  plan.fft_ = std::make_shared<const detail::Fft2d>(width, height);

  const std::size_t sw = plan.spectrum_width();
  const std::size_t nspec = sw * height;

  plan.eigen_laplacian_.resize(nspec);
  for (std::size_t ky = 0; ky < height; ++ky) {
    const double sy = std::sin(std::numbers::pi * static_cast<double>(ky) / height);
    for (std::size_t kx = 0; kx < sw; ++kx) {
      const double sx = std::sin(std::numbers::pi * static_cast<double>(kx) / width);
      plan.eigen_laplacian_[ky * sw + kx] = 4.0 * sx * sx + 4.0 * sy * sy;
    }
  }

  if (spec.identity) {
    plan.eigen_blur_.assign(nspec, {1.0, 0.0});
  } else {
    // Place tap (dx, dy) at (dx mod W, dy mod H) so the kernel is centred on
    // the origin of the periodic grid.
    std::vector<double> psf(width * height, 0.0);
    const int r = kernel.radius();
    const auto w = static_cast<long>(width);
    const auto h = static_cast<long>(height);
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const long x = ((dx % w) + w) % w;
        const long y = ((dy % h) + h) % h;
        psf[static_cast<std::size_t>(y * w + x)] += kernel.at(dx, dy);
      }
    }
    plan.eigen_blur_.resize(nspec);
    plan.fft_->forward(psf.data(), plan.eigen_blur_.data());
  }
  return plan;
}

void SpectralPlan::require_shape(const ImageBuffer& img, const char* context) const {
  if (img.width() != width_ || img.height() != height_) {
    throw DimensionMismatch(std::string(context) + ": image " + std::to_string(img.width()) +
                            "x" + std::to_string(img.height()) + " does not match plan " +
                            std::to_string(width_) + "x" + std::to_string(height_));
  }
}

ImageBuffer SpectralPlan::multiply(const ImageBuffer& u, bool conjugate) const {
  std::vector<std::complex<double>> spec(eigen_blur_.size());
  fft_->forward(u.data().data(), spec.data());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec[i] *= conjugate ? std::conj(eigen_blur_[i]) : eigen_blur_[i];
  }
  ImageBuffer out(width_, height_);
  fft_->inverse(spec.data(), out.data().data());
  const double scale = 1.0 / static_cast<double>(u.size());
  for (double& v : out) v *= scale;
  return out;
}

ImageBuffer SpectralPlan::blur(const ImageBuffer& u) const {
  require_shape(u, "blur");
  if (identity_) return u;
  return multiply(u, false);
}

ImageBuffer SpectralPlan::blur_adjoint(const ImageBuffer& u) const {
  require_shape(u, "blur_adjoint");
  if (identity_) return u;
  return multiply(u, true);
}

ImageBuffer SpectralPlan::solve(const ImageBuffer& rhs, double ratio) const {
  require_shape(rhs, "solve_u");
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw InvalidArgument("solve_u: ratio must be positive, got " + std::to_string(ratio));
  }
  std::vector<std::complex<double>> spec(eigen_blur_.size());
  fft_->forward(rhs.data().data(), spec.data());
  const double scale = 1.0 / static_cast<double>(rhs.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    // Strictly positive: eigen_blur(0) = 1 for a normalized kernel.
    const double denom = eigen_laplacian_[i] + ratio * std::norm(eigen_blur_[i]);
    spec[i] *= scale / denom;
  }
  ImageBuffer out(width_, height_);
  fft_->inverse(spec.data(), out.data().data());
  return out;
}

ImageBuffer solve_u(const SpectralPlan& plan, const ImageBuffer& rhs, double ratio) {
  return plan.solve(rhs, ratio);
}

}  // namespace hwtv
