#include "hwtv/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hwtv/error.hpp"
#include "hwtv/rng.hpp"

namespace hwtv {

namespace {

// Draws the cartoon scene into columns [x0, x0 + w) of `img`.
void draw_cartoon(ImageBuffer& img, std::size_t x0, std::size_t w, double contrast) {
  const double background = 0.5 - 0.3 * contrast;
  const double rect_level = 0.5;
  const double disk_level = 0.5 + 0.3 * contrast;
  const double h = static_cast<double>(img.height());
  const double fw = static_cast<double>(w);
  const double cx = 0.35 * fw;
  const double cy = 0.35 * h;
  const double radius = 0.2 * std::min(fw, h);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double px = static_cast<double>(x) + 0.5;
      const double py = static_cast<double>(y) + 0.5;
      double v = background;
      if (px >= 0.45 * fw && px < 0.85 * fw && py >= 0.55 * h && py < 0.85 * h) v = rect_level;
      if ((px - cx) * (px - cx) + (py - cy) * (py - cy) <= radius * radius) v = disk_level;
      img.at(x0 + x, y) = v;
    }
  }
}

void draw_texture(ImageBuffer& img, std::size_t x0, std::size_t x1, double freq, double contrast) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double w = static_cast<double>(img.width());
  const double h = static_cast<double>(img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    const double sy = std::sin(two_pi * freq * static_cast<double>(y) / h);
    for (std::size_t x = x0; x < x1; ++x) {
      const double sx = std::sin(two_pi * freq * static_cast<double>(x) / w);
      img.at(x, y) = 0.5 + 0.25 * contrast * (sx + sy);
    }
  }
}

}  // namespace

ImageBuffer make_phantom(const PhantomSpec& spec) {
  if (spec.width < 32 || spec.height < 32) {
    throw InvalidArgument("phantom sides must be at least 32 pixels");
  }
  if (!(spec.contrast > 0.0 && spec.contrast <= 1.0)) {
    throw InvalidArgument("phantom contrast must be in (0, 1]");
  }
  if (!(spec.texture_freq > 0.0)) throw InvalidArgument("texture frequency must be positive");

  ImageBuffer img(spec.width, spec.height);
  switch (spec.kind) {
    case PhantomKind::Cartoon:
      draw_cartoon(img, 0, spec.width, spec.contrast);
      break;
    case PhantomKind::Texture:
      draw_texture(img, 0, spec.width, spec.texture_freq, spec.contrast);
      break;
    case PhantomKind::Mixed: {
      const std::size_t half = spec.width / 2;
      draw_cartoon(img, 0, half, spec.contrast);
      draw_texture(img, half, spec.width, spec.texture_freq, spec.contrast);
      break;
    }
  }
  return img;
}

ImageBuffer add_awgn(const ImageBuffer& u, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("noise sigma must be positive");
  CounterRng rng(seed);
  ImageBuffer g = u;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < g.size(); i += 2) {
    const double radius = std::sqrt(-2.0 * std::log(rng.next_uniform_open_zero()));
    const double theta = two_pi * rng.next_uniform();
    g[i] += sigma * radius * std::cos(theta);
    if (i + 1 < g.size()) g[i + 1] += sigma * radius * std::sin(theta);
  }
  return g;
}

ImageBuffer degrade(const ImageBuffer& u, const DegradationSpec& spec) {
  return add_awgn(blur_apply(u, spec.blur), spec.sigma, spec.seed);
}

}  // namespace hwtv
