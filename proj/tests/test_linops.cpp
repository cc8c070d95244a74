#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hwtv/error.hpp"
#include "hwtv/linops.hpp"
#include "hwtv/spectral.hpp"
#include "support.hpp"

namespace hwtv {
namespace {

TEST(Gradient, ConstantImageHasZeroField) {
  const GradientField g = gradient(ImageBuffer(5, 4, 0.7));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(g.h[i], 0.0);
    EXPECT_EQ(g.v[i], 0.0);
  }
}

TEST(Gradient, PeriodicRow) {
  const GradientField g = gradient(ImageBuffer(3, 1, std::vector<double>{1.0, 4.0, 9.0}));
  EXPECT_EQ(g.h[0], 3.0);
  EXPECT_EQ(g.h[1], 5.0);
  EXPECT_EQ(g.h[2], -8.0);
  for (double v : g.v) EXPECT_EQ(v, 0.0);
}

TEST(Gradient, MatchesIndexLoop) {
  std::mt19937_64 rng(2);
  const ImageBuffer u = test::random_image(5, 5, rng);
  const GradientField g = gradient(u);
  for (std::size_t y = 0; y < 5; ++y) {
    for (std::size_t x = 0; x < 5; ++x) {
      EXPECT_EQ(g.h[y * 5 + x], u.at((x + 1) % 5, y) - u.at(x, y));
      EXPECT_EQ(g.v[y * 5 + x], u.at(x, (y + 1) % 5) - u.at(x, y));
    }
  }
}

TEST(Divergence, ZeroFieldGivesZeroImage) {
  const ImageBuffer d = divergence(GradientField(4, 3));
  for (double v : d) EXPECT_EQ(v, 0.0);
}

TEST(Divergence, AnnihilatesGradientOfConstant) {
  const ImageBuffer d = divergence(gradient(ImageBuffer(6, 6, 3.0)));
  for (double v : d) EXPECT_EQ(v, 0.0);
}

TEST(Divergence, IsAdjointOfGradient) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t w = 2 + trial % 9, h = 2 + (trial * 3) % 8;
    const ImageBuffer u = test::random_image(w, h, rng, -1.0, 1.0);
    const GradientField t = test::random_field(w, h, rng);
    const double lhs = dot(gradient(u), t);
    const double rhs = dot(u, divergence(t));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * norm2(u) * std::sqrt(dot(t, t)));
  }
}

TEST(Kernel, IdentityIsUnitTap) {
  const BlurKernel k = make_kernel(BlurSpec::none());
  EXPECT_EQ(k.band, 1);
  ASSERT_EQ(k.taps.size(), 1u);
  EXPECT_EQ(k.taps[0], 1.0);
}

TEST(Kernel, WideGaussianApproachesBoxFilter) {
  const BlurKernel k = make_kernel(BlurSpec::gaussian(3, 1e6));
  for (double v : k.taps) EXPECT_NEAR(v, 1.0 / 9.0, 1e-9);
}

TEST(Kernel, MatchesDirectEvaluation) {
  const BlurKernel k = make_kernel(BlurSpec::gaussian(5, 1.0));
  double total = 0.0;
  for (int j = -2; j <= 2; ++j)
    for (int i = -2; i <= 2; ++i) total += std::exp(-(i * i + j * j) / 2.0);
  EXPECT_NEAR(k.at(0, 0), 1.0 / total, 1e-12);
  EXPECT_NEAR(k.at(1, -2), std::exp(-2.5) / total, 1e-12);
  double sum = 0.0;
  for (double v : k.taps) {
    EXPECT_GE(v, 0.0);
    sum += v;
  }
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(Kernel, RejectsBadSpecs) {
  EXPECT_THROW(make_kernel(BlurSpec::gaussian(4, 1.0)), InvalidArgument);
  EXPECT_THROW(make_kernel(BlurSpec::gaussian(-1, 1.0)), InvalidArgument);
  EXPECT_THROW(make_kernel(BlurSpec::gaussian(3, 0.0)), InvalidArgument);
}

TEST(Blur, IdentityReturnsInput) {
  std::mt19937_64 rng(1);
  const ImageBuffer u = test::random_image(7, 5, rng);
  EXPECT_LE(test::max_abs_diff(blur_apply(u, BlurSpec::none()), u), 1e-13);
  EXPECT_LE(test::max_abs_diff(blur_adjoint(u, BlurSpec::none()), u), 1e-13);
}

TEST(Blur, PreservesConstants) {
  const ImageBuffer out = blur_apply(ImageBuffer(12, 10, 0.42), BlurSpec::gaussian(5, 1.0));
  for (double v : out) EXPECT_NEAR(v, 0.42, 1e-14);
}

TEST(Blur, MatchesSpatialCircularConvolution) {
  std::mt19937_64 rng(9);
  for (const auto& spec : {BlurSpec::gaussian(3, 0.8), BlurSpec::gaussian(5, 1.0)}) {
    const ImageBuffer u = test::random_image(8, 8, rng);
    EXPECT_LE(test::max_abs_diff(blur_apply(u, spec), test::convolve_direct(u, make_kernel(spec))),
              1e-10);
  }
  const ImageBuffer u = test::random_image(11, 6, rng);
  const BlurSpec spec = BlurSpec::gaussian(5, 1.3);
  EXPECT_LE(test::max_abs_diff(blur_apply(u, spec), test::convolve_direct(u, make_kernel(spec))),
            1e-10);
}

TEST(Blur, SymmetricKernelIsSelfAdjoint) {
  std::mt19937_64 rng(10);
  const ImageBuffer u = test::random_image(9, 9, rng);
  const BlurSpec spec = BlurSpec::gaussian(5, 1.0);
  EXPECT_LE(test::max_abs_diff(blur_adjoint(u, spec), blur_apply(u, spec)), 1e-13);
}

TEST(Blur, AdjointIdentity) {
  std::mt19937_64 rng(12);
  const BlurSpec spec = BlurSpec::gaussian(5, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ImageBuffer u = test::random_image(6, 6, rng, -1.0, 1.0);
    const ImageBuffer w = test::random_image(6, 6, rng, -1.0, 1.0);
    const double lhs = dot(blur_apply(u, spec), w);
    const double rhs = dot(u, blur_adjoint(w, spec));
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * norm2(u) * norm2(w));
  }
}

TEST(Blur, IsLinear) {
  std::mt19937_64 rng(13);
  const BlurSpec spec = BlurSpec::gaussian(3, 0.7);
  for (int trial = 0; trial < 10; ++trial) {
    const ImageBuffer u = test::random_image(10, 7, rng);
    const ImageBuffer v = test::random_image(10, 7, rng);
    const double a = 1.7, b = -0.3;
    ImageBuffer mix(10, 7);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * u[i] + b * v[i];
    const ImageBuffer ku = blur_apply(u, spec), kv = blur_apply(v, spec);
    const ImageBuffer kmix = blur_apply(mix, spec);
    for (std::size_t i = 0; i < mix.size(); ++i) EXPECT_NEAR(kmix[i], a * ku[i] + b * kv[i], 1e-12);
  }
}

TEST(Blur, RejectsKernelLargerThanImage) {
  EXPECT_THROW(blur_apply(ImageBuffer(4, 8), BlurSpec::gaussian(5, 1.0)), InvalidArgument);
}

TEST(SpectralPlan, LaplacianSymbol) {
  const SpectralPlan plan = build_plan(8, 6, BlurSpec::none());
  const auto lap = plan.eigen_laplacian();
  ASSERT_EQ(lap.size(), 6u * plan.spectrum_width());
  EXPECT_EQ(lap[0], 0.0);
  for (std::size_t ky = 0; ky < 6; ++ky) {
    for (std::size_t kx = 0; kx < plan.spectrum_width(); ++kx) {
      const double sx = std::sin(std::numbers::pi * kx / 8.0);
      const double sy = std::sin(std::numbers::pi * ky / 6.0);
      const double v = lap[ky * plan.spectrum_width() + kx];
      EXPECT_NEAR(v, 4 * sx * sx + 4 * sy * sy, 1e-14);
      if (kx != 0 || ky != 0) {
        EXPECT_GT(v, 0.0);
      }
    }
  }
}

TEST(SpectralPlan, IdentityBlurSymbolIsOne) {
  const SpectralPlan plan = build_plan(5, 7, BlurSpec::none());
  for (const auto& c : plan.eigen_blur()) EXPECT_EQ(c, std::complex<double>(1.0, 0.0));
}

TEST(SpectralPlan, GaussianSymbolIsContraction) {
  const SpectralPlan plan = build_plan(16, 16, BlurSpec::gaussian(5, 1.0));
  EXPECT_NEAR(std::abs(plan.eigen_blur()[0]), 1.0, 1e-15);
  for (const auto& c : plan.eigen_blur()) EXPECT_LE(std::abs(c), 1.0 + 1e-15);
}

// Blur via a naive full DFT, with the half spectrum extended by Hermitian symmetry.
TEST(SpectralPlan, SymbolReproducesBlurApply) {
  const std::size_t n = 16;
  const BlurSpec spec = BlurSpec::gaussian(5, 1.0);
  const SpectralPlan plan = build_plan(n, n, spec);
  std::mt19937_64 rng(14);
  const ImageBuffer u = test::random_image(n, n, rng);
  const double two_pi = 2.0 * std::numbers::pi;
  auto symbol = [&](std::size_t kx, std::size_t ky) {
    const std::size_t sw = plan.spectrum_width();
    if (kx < sw) return plan.eigen_blur()[ky * sw + kx];
    return std::conj(plan.eigen_blur()[((n - ky) % n) * sw + (n - kx)]);
  };
  std::vector<std::complex<double>> spectrum(n * n);
  for (std::size_t ky = 0; ky < n; ++ky)
    for (std::size_t kx = 0; kx < n; ++kx) {
      std::complex<double> acc = 0.0;
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x)
          acc += u.at(x, y) * std::polar(1.0, -two_pi * double(kx * x + ky * y) / double(n));
      spectrum[ky * n + kx] = acc * symbol(kx, ky);
    }
  ImageBuffer out(n, n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) {
      std::complex<double> acc = 0.0;
      for (std::size_t ky = 0; ky < n; ++ky)
        for (std::size_t kx = 0; kx < n; ++kx)
          acc += spectrum[ky * n + kx] * std::polar(1.0, two_pi * double(kx * x + ky * y) / double(n));
      out.at(x, y) = acc.real() / double(n * n);
    }
  EXPECT_LE(test::max_abs_diff(out, blur_apply(u, spec)), 1e-10);
}

ImageBuffer normal_operator(const ImageBuffer& u, const BlurSpec& spec, double ratio) {
  ImageBuffer out = divergence(gradient(u));
  const ImageBuffer ktk = blur_adjoint(blur_apply(u, spec), spec);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += ratio * ktk[i];
  return out;
}

TEST(SolveU, RecoversKnownSolution) {
  std::mt19937_64 rng(15);
  const BlurSpec spec = BlurSpec::gaussian(3, 1.0);
  const SpectralPlan plan = build_plan(8, 8, spec);
  for (double ratio : {0.1, 5.0, 100.0}) {
    const ImageBuffer u0 = test::random_image(8, 8, rng);
    const ImageBuffer u = solve_u(plan, normal_operator(u0, spec, ratio), ratio);
    EXPECT_LE(test::max_abs_diff(u, u0), 1e-9);
  }
}

TEST(SolveU, ConstantRightHandSide) {
  const SpectralPlan plan = build_plan(6, 6, BlurSpec::none());
  const ImageBuffer u = solve_u(plan, ImageBuffer(6, 6, 0.8), 1.0);
  for (double v : u) EXPECT_NEAR(v, 0.8, 1e-14);
}

TEST(SolveU, ResidualBound) {
  std::mt19937_64 rng(16);
  for (const auto& spec : {BlurSpec::none(), BlurSpec::gaussian(5, 1.0)}) {
    const SpectralPlan plan = build_plan(16, 16, spec);
    for (int trial = 0; trial < 10; ++trial) {
      const ImageBuffer rhs = test::random_image(16, 16, rng, -1.0, 1.0);
      const double ratio = 5.0;
      const ImageBuffer u = solve_u(plan, rhs, ratio);
      EXPECT_LE(distance2(normal_operator(u, spec, ratio), rhs) / norm2(rhs), 1e-10);
    }
  }
}

TEST(SolveU, ZeroRhsAndBadRatio) {
  const SpectralPlan plan = build_plan(6, 6, BlurSpec::gaussian(3, 1.0));
  for (double v : solve_u(plan, ImageBuffer(6, 6), 2.0)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(solve_u(plan, ImageBuffer(6, 6), 0.0), InvalidArgument);
  EXPECT_THROW(solve_u(plan, ImageBuffer(6, 6), -1.0), InvalidArgument);
  EXPECT_THROW(solve_u(plan, ImageBuffer(5, 6), 1.0), DimensionMismatch);
}

TEST(SolveU, DenominatorStrictlyPositive) {
  for (int band : {1, 3, 5, 7}) {
    const BlurSpec spec = band == 1 ? BlurSpec::none() : BlurSpec::gaussian(band, 2.0);
    const SpectralPlan plan = build_plan(12, 10, spec);
    for (double ratio : {1e-6, 1.0, 5.0}) {
      for (std::size_t i = 0; i < plan.eigen_laplacian().size(); ++i) {
        EXPECT_GT(plan.eigen_laplacian()[i] + ratio * std::norm(plan.eigen_blur()[i]), 0.0);
      }
    }
  }
}

TEST(BoxMean, ConstantInput) {
  const ImageBuffer m = box_mean(ImageBuffer(9, 7, 0.3), 2);
  for (double v : m) EXPECT_NEAR(v, 0.3, 1e-15);
}

TEST(BoxMean, ImpulseSpreadsOverPeriodicNeighbours) {
  ImageBuffer img(6, 5);
  img.at(0, 0) = 1.0;
  const ImageBuffer m = box_mean(img, 1);
  for (std::size_t y = 0; y < 5; ++y) {
    for (std::size_t x = 0; x < 6; ++x) {
      const bool near = (x <= 1 || x == 5) && (y <= 1 || y == 4);
      EXPECT_NEAR(m.at(x, y), near ? 1.0 / 9.0 : 0.0, 1e-15) << x << "," << y;
    }
  }
}

TEST(BoxMean, MatchesDirectWindowedMean) {
  std::mt19937_64 rng(17);
  const ImageBuffer img = test::random_image(9, 9, rng);
  const int r = 2;
  const ImageBuffer m = box_mean(img, r);
  for (std::size_t y = 0; y < 9; ++y) {
    for (std::size_t x = 0; x < 9; ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
          acc += img.at(test::wrap(long(x) + dx, 9), test::wrap(long(y) + dy, 9));
      EXPECT_NEAR(m.at(x, y), acc / 25.0, 1e-12);
    }
  }
}

TEST(BoxMean, StaysWithinInputRange) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const ImageBuffer img = test::random_image(20, 15, rng, -3.0, 5.0);
    const auto [lo, hi] = std::minmax_element(img.begin(), img.end());
    for (double v : box_mean(img, 1 + trial % 7)) {
      EXPECT_GE(v, *lo);
      EXPECT_LE(v, *hi);
    }
  }
}

TEST(BoxMean, RejectsOversizedWindow) {
  EXPECT_THROW(box_mean(ImageBuffer(9, 4), 2), InvalidArgument);
  EXPECT_THROW(box_mean(ImageBuffer(9, 9), 0), InvalidArgument);
}

TEST(GradientNorms, PixelNorms) {
  GradientField f(2, 1);
  f.h = {3.0, -1.0};
  f.v = {4.0, 2.0};
  const ImageBuffer iso = gradient_norms(f, TvNorm::Isotropic);
  const ImageBuffer aniso = gradient_norms(f, TvNorm::Anisotropic);
  EXPECT_EQ(iso[0], 5.0);
  EXPECT_EQ(aniso[0], 7.0);
  EXPECT_EQ(aniso[1], 3.0);
}

}  // namespace
}  // namespace hwtv
