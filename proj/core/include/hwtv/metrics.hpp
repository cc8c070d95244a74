#pragma once

#include "hwtv/image.hpp"

namespace hwtv {

struct MetricsReport {
  double isnr = 0.0;  // dB
  double ssim = 0.0;
};

// Improvement in SNR of `recovered` over `observed`, both measured against
// `truth`: 10*log10(||observed - truth||^2 / ||recovered - truth||^2).
// Throws DimensionMismatch, or InfiniteIsnr when recovered == truth.
double isnr(const ImageBuffer& observed, const ImageBuffer& truth, const ImageBuffer& recovered);

// Gaussian-window SSIM parameters. Defaults are the usual 11x11, std 1.5,
// K1 = 0.01, K2 = 0.03 on a dynamic range of 1.
struct SsimParams {
  int window = 11;
  double window_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

// Mean local SSIM over every window position lying fully inside the image.
// Throws DimensionMismatch, or InvalidArgument if the image is smaller than
// the window.
double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimParams& params = {});

// Normalized 1-D Gaussian taps of the SSIM window.
std::vector<double> ssim_window_taps(const SsimParams& params);

}  // namespace hwtv
