#include "hwtv/metrics.hpp"

#include <cmath>
#include <string>

#include "hwtv/error.hpp"

namespace hwtv {

double isnr(const ImageBuffer& observed, const ImageBuffer& truth, const ImageBuffer& recovered) {
  require_same_shape(observed, truth, "isnr");
  require_same_shape(recovered, truth, "isnr");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double dg = observed[i] - truth[i];
    const double du = recovered[i] - truth[i];
    num += dg * dg;
    den += du * du;
  }
  if (den == 0.0) throw InfiniteIsnr();
  return 10.0 * std::log10(num / den);
}

std::vector<double> ssim_window_taps(const SsimParams& params) {
  std::vector<double> taps(params.window);
  const int half = params.window / 2;
  double sum = 0.0;
  for (int i = 0; i < params.window; ++i) {
    const double d = i - half;
    taps[i] = std::exp(-d * d / (2.0 * params.window_sigma * params.window_sigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

namespace {

// Separable "valid" filtering: output is (w - n + 1) x (h - n + 1).
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t w, std::size_t h,
                                 const std::vector<double>& taps) {
  const std::size_t n = taps.size();
  const std::size_t ow = w - n + 1;
  const std::size_t oh = h - n + 1;
  std::vector<double> rows(ow * h);
  for (std::size_t y = 0; y < h; ++y) {
    const double* line = src.data() + y * w;
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += taps[k] * line[x + k];
      rows[y * ow + x] = acc;
    }
  }
  std::vector<double> out(ow * oh);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += taps[k] * rows[(y + k) * ow + x];
      out[y * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const ImageBuffer& a, const ImageBuffer& b, const SsimParams& params) {
  require_same_shape(a, b, "ssim");
  if (params.window <= 0 || params.window % 2 == 0) {
    throw InvalidArgument("ssim window must be odd and positive");
  }
  const std::size_t win = static_cast<std::size_t>(params.window);
  if (a.width() < win || a.height() < win) {
    throw InvalidArgument("ssim: image " + std::to_string(a.width()) + "x" +
                          std::to_string(a.height()) + " is smaller than the " +
                          std::to_string(win) + "x" + std::to_string(win) + " window");
  }
  const std::size_t w = a.width();
  const std::size_t h = a.height();
  const auto taps = ssim_window_taps(params);

  std::vector<double> aa(a.size()), bb(a.size()), ab(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  const std::vector<double> av(a.begin(), a.end());
  const std::vector<double> bv(b.begin(), b.end());
  const auto mu_a = filter_valid(av, w, h, taps);
  const auto mu_b = filter_valid(bv, w, h, taps);
  const auto e_aa = filter_valid(aa, w, h, taps);
  const auto e_bb = filter_valid(bb, w, h, taps);
  const auto e_ab = filter_valid(ab, w, h, taps);

  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma2 = mu_a[i] * mu_a[i];
    const double mb2 = mu_b[i] * mu_b[i];
    const double mab = mu_a[i] * mu_b[i];
    const double var_a = e_aa[i] - ma2;
    const double var_b = e_bb[i] - mb2;
    const double cov = e_ab[i] - mab;
    total += ((2.0 * mab + c1) * (2.0 * cov + c2)) / ((ma2 + mb2 + c1) * (var_a + var_b + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

}  // namespace hwtv
