#pragma once

#include <cstddef>
#include <cstdint>

#include "hwtv/image.hpp"
#include "hwtv/linops.hpp"

namespace hwtv {

enum class PhantomKind { Cartoon, Texture, Mixed };

// cartoon: a disk and a rectangle on a flat background (three levels).
// texture: 0.5 + contrast/4 * (sin(2 pi f x / W) + sin(2 pi f y / H)).
// mixed: cartoon on the left half, texture on the right half.
struct PhantomSpec {
  std::size_t width = 128;
  std::size_t height = 128;
  PhantomKind kind = PhantomKind::Mixed;
  double texture_freq = 8.0;  // cycles per image width/height
  double contrast = 0.8;      // in (0, 1]
};

// Throws InvalidArgument for sides below 32 or contrast outside (0, 1].
ImageBuffer make_phantom(const PhantomSpec& spec);

// u + N(0, sigma^2) per pixel. Normals come from Box-Muller on consecutive
// pairs of CounterRng(seed) draws: pixel 2j uses r cos(theta), pixel 2j+1
// uses r sin(theta). No clipping.
ImageBuffer add_awgn(const ImageBuffer& u, double sigma, std::uint64_t seed);

struct DegradationSpec {
  BlurSpec blur;
  double sigma = 0.05;
  std::uint64_t seed = 0;
};

// add_awgn(blur_apply(u, blur), sigma, seed).
ImageBuffer degrade(const ImageBuffer& u, const DegradationSpec& spec);

}  // namespace hwtv
