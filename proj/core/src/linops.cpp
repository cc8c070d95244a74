#include "hwtv/linops.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hwtv/error.hpp"
#include "hwtv/spectral.hpp"

namespace hwtv {

bool GradientField::all_finite() const noexcept {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!std::isfinite(h[i]) || !std::isfinite(v[i])) return false;
  }
  return true;
}

double dot(const GradientField& a, const GradientField& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionMismatch("dot: gradient fields differ in shape");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a.h[i] * b.h[i] + a.v[i] * b.v[i];
  return acc;
}

ImageBuffer gradient_norms(const GradientField& g, TvNorm p) {
  ImageBuffer out(g.width, g.height);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = pixel_norm(g.h[i], g.v[i], p);
  return out;
}

BlurKernel make_kernel(const BlurSpec& spec) {
  if (spec.identity) return {};
  if (spec.band <= 0 || spec.band % 2 == 0) {
    throw InvalidArgument("blur band must be odd and positive, got " + std::to_string(spec.band));
  }
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw InvalidArgument("blur sigma must be positive");
  }
  BlurKernel k;
  k.band = spec.band;
  k.taps.assign(static_cast<std::size_t>(spec.band) * spec.band, 0.0);
  const int r = k.radius();
  const double two_s2 = 2.0 * spec.sigma * spec.sigma;
  double sum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double g = std::exp(-(dx * dx + dy * dy) / two_s2);
      k.taps[static_cast<std::size_t>((dy + r) * k.band + (dx + r))] = g;
      sum += g;
    }
  }
  for (double& t : k.taps) t /= sum;
  return k;
}

GradientField gradient(const ImageBuffer& u) {
  const std::size_t w = u.width();
  const std::size_t h = u.height();
  GradientField g(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t yn = (y + 1 == h) ? 0 : y + 1;
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t xn = (x + 1 == w) ? 0 : x + 1;
      const double c = u.at(x, y);
      g.h[y * w + x] = u.at(xn, y) - c;
      g.v[y * w + x] = u.at(x, yn) - c;
    }
  }
  return g;
}

ImageBuffer divergence(const GradientField& t) {
  const std::size_t w = t.width;
  const std::size_t h = t.height;
  ImageBuffer out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t yp = (y == 0) ? h - 1 : y - 1;
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t xp = (x == 0) ? w - 1 : x - 1;
      const std::size_t i = y * w + x;
      out[i] = (t.h[y * w + xp] - t.h[i]) + (t.v[yp * w + x] - t.v[i]);
    }
  }
  return out;
}

ImageBuffer blur_apply(const ImageBuffer& u, const BlurSpec& spec) {
  if (spec.identity) return u;
  return build_plan(u.width(), u.height(), spec).blur(u);
}

ImageBuffer blur_adjoint(const ImageBuffer& u, const BlurSpec& spec) {
  if (spec.identity) return u;
  return build_plan(u.width(), u.height(), spec).blur_adjoint(u);
}

namespace {

std::size_t wrap_index(long i, std::size_t n) {
  const auto m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// Periodic sliding-window sums of length 2r+1 along a row.
void sliding_sum_row(const double* src, double* dst, std::size_t n, int r) {
  double s = 0.0;
  for (long d = -r; d <= r; ++d) s += src[wrap_index(d, n)];
  std::size_t enter = wrap_index(r + 1, n);
  std::size_t leave = wrap_index(-r, n);
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = s;
    s += src[enter] - src[leave];
    if (++enter == n) enter = 0;
    if (++leave == n) leave = 0;
  }
}

// Same along columns, carrying a whole row of running sums at a time.
void sliding_sum_columns(const ImageBuffer& src, ImageBuffer& dst, int r) {
  const std::size_t w = src.width();
  const std::size_t h = src.height();
  std::vector<double> s(w, 0.0);
  for (long d = -r; d <= r; ++d) {
    const double* row = src.data().data() + wrap_index(d, h) * w;
    for (std::size_t x = 0; x < w; ++x) s[x] += row[x];
  }
  std::size_t enter = wrap_index(r + 1, h);
  std::size_t leave = wrap_index(-r, h);
  for (std::size_t y = 0; y < h; ++y) {
    double* out = &dst.at(0, y);
    const double* in = src.data().data() + enter * w;
    const double* gone = src.data().data() + leave * w;
    for (std::size_t x = 0; x < w; ++x) {
      out[x] = s[x];
      s[x] += in[x] - gone[x];
    }
    if (++enter == h) enter = 0;
    if (++leave == h) leave = 0;
  }
}

}  // namespace

ImageBuffer box_mean(const ImageBuffer& values, int r) {
  const std::size_t w = values.width();
  const std::size_t h = values.height();
  if (r < 1) throw InvalidArgument("box_mean radius must be positive");
  const std::size_t side = 2 * static_cast<std::size_t>(r) + 1;
  if (side > w || side > h) {
    throw InvalidArgument("box_mean window " + std::to_string(side) + "x" +
                          std::to_string(side) + " exceeds image " + std::to_string(w) + "x" +
                          std::to_string(h));
  }
  ImageBuffer rows(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    sliding_sum_row(values.data().data() + y * w, &rows.at(0, y), w, r);
  }
  ImageBuffer out(w, h);
  sliding_sum_columns(rows, out, r);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double scale = 1.0 / static_cast<double>(side * side);
  // Running sums can drift by a few ulps; the true mean is always in range.
  for (double& v : out) v = std::clamp(v * scale, *lo, *hi);
  return out;
}

}  // namespace hwtv
