#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hwtv/image.hpp"
#include "hwtv/linops.hpp"

namespace hwtv {

namespace detail {
class Fft2d;
}

// Diagonalization of the periodic operators D^T D and K in the 2-D DFT
// basis. Arrays use the real-to-complex half spectrum: height rows of
// width/2 + 1 frequencies, row-major.
//
// A plan is immutable once built and may be shared between threads; every
// apply/solve call uses its own transform workspace.
class SpectralPlan {
 public:
  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t spectrum_width() const noexcept { return width_ / 2 + 1; }
  bool identity_blur() const noexcept { return identity_; }

  // DFT of the origin-centred, zero-padded kernel.
  std::span<const std::complex<double>> eigen_blur() const noexcept { return eigen_blur_; }
  // 4 sin^2(pi kx / W) + 4 sin^2(pi ky / H).
  std::span<const double> eigen_laplacian() const noexcept { return eigen_laplacian_; }

  ImageBuffer blur(const ImageBuffer& u) const;
  ImageBuffer blur_adjoint(const ImageBuffer& u) const;

  // Solves (D^T D + ratio K^T K) u = rhs by per-frequency division.
  ImageBuffer solve(const ImageBuffer& rhs, double ratio) const;

 private:
  friend SpectralPlan build_plan(std::size_t width, std::size_t height, const BlurSpec& spec);

  SpectralPlan() = default;
  void require_shape(const ImageBuffer& img, const char* context) const;
  ImageBuffer multiply(const ImageBuffer& u, bool conjugate) const;

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  bool identity_ = true;
  std::shared_ptr<const detail::Fft2d> fft_;
  std::vector<std::complex<double>> eigen_blur_;
  std::vector<double> eigen_laplacian_;
};

// Throws InvalidArgument for zero dimensions or a kernel larger than the image.
SpectralPlan build_plan(std::size_t width, std::size_t height, const BlurSpec& spec);

// Free-function form of SpectralPlan::solve. Rejects ratio <= 0.
ImageBuffer solve_u(const SpectralPlan& plan, const ImageBuffer& rhs, double ratio);

}  // namespace hwtv
