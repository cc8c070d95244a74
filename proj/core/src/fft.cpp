#include "fft.hpp"

#include <algorithm>
#include <mutex>

namespace hwtv::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Fft2d::Fft2d(std::size_t width, std::size_t height) : width_(width), height_(height) {
  auto real = fftw_array<double>(real_size());
  auto spec = fftw_array<fftw_complex>(spectrum_size());
  const int w = static_cast<int>(width);
  const int h = static_cast<int>(height);
  std::lock_guard lock(planner_mutex());
  // FFTW_ESTIMATE never touches the arrays and picks the same plan every
  // time, which keeps results bit-reproducible across runs.
  forward_ = fftw_plan_dft_r2c_2d(h, w, real.get(), spec.get(), FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_2d(h, w, spec.get(), real.get(), FFTW_ESTIMATE);
  if (forward_ == nullptr || inverse_ == nullptr) throw std::bad_alloc();
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(inverse_);
}

void Fft2d::forward(const double* in, std::complex<double>* out) const {
  auto real = fftw_array<double>(real_size());
  auto spec = fftw_array<fftw_complex>(spectrum_size());
  std::copy(in, in + real_size(), real.get());
  fftw_execute_dft_r2c(forward_, real.get(), spec.get());
  const auto* src = reinterpret_cast<const std::complex<double>*>(spec.get());
  std::copy(src, src + spectrum_size(), out);
}

void Fft2d::inverse(const std::complex<double>* in, double* out) const {
  auto real = fftw_array<double>(real_size());
  auto spec = fftw_array<fftw_complex>(spectrum_size());
  std::copy(in, in + spectrum_size(), reinterpret_cast<std::complex<double>*>(spec.get()));
  // c2r overwrites its input, hence the private copy above.
  fftw_execute_dft_c2r(inverse_, spec.get(), real.get());
  std::copy(real.get(), real.get() + real_size(), out);
}

}  // namespace hwtv::detail
