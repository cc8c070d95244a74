#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <new>

namespace hwtv::detail {

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwArray = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwArray<T> fftw_array(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwArray<T>(p);
}

// Real 2-D transforms of a fixed row-major width x height grid. Plans are
// created once (FFTW planning is serialized behind a global mutex); execute
// calls use private aligned buffers, so one instance can serve many threads.
class Fft2d {
 public:
  Fft2d(std::size_t width, std::size_t height);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;

  std::size_t real_size() const noexcept { return width_ * height_; }
  std::size_t spectrum_size() const noexcept { return height_ * (width_ / 2 + 1); }

  // out receives spectrum_size() coefficients.
  void forward(const double* in, std::complex<double>* out) const;
  // Unnormalized inverse; out receives real_size() samples scaled by W*H.
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  std::size_t width_;
  std::size_t height_;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace hwtv::detail
