#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "hwtv/image.hpp"
#include "hwtv/linops.hpp"

namespace hwtv::test {

inline ImageBuffer random_image(std::size_t w, std::size_t h, std::mt19937_64& rng,
                                double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  ImageBuffer img(w, h);
  for (double& v : img) v = dist(rng);
  return img;
}

inline GradientField random_field(std::size_t w, std::size_t h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GradientField f(w, h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    f.h[i] = dist(rng);
    f.v[i] = dist(rng);
  }
  return f;
}

inline std::size_t wrap(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// Direct periodic convolution: out(x,y) = sum k(dx,dy) u(x-dx, y-dy).
inline ImageBuffer convolve_direct(const ImageBuffer& u, const BlurKernel& k) {
  ImageBuffer out(u.width(), u.height());
  const int r = k.radius();
  for (std::size_t y = 0; y < u.height(); ++y) {
    for (std::size_t x = 0; x < u.width(); ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          acc += k.at(dx, dy) * u.at(wrap(static_cast<long>(x) - dx, u.width()),
                                     wrap(static_cast<long>(y) - dy, u.height()));
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

inline double max_abs_diff(const ImageBuffer& a, const ImageBuffer& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Minimizer of a unimodal f on [lo, hi] by golden-section search.
template <class F>
double golden_min(F f, double lo, double hi, int iters = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-15; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// argmin over t in R^2 of alpha ||t||_2 + beta/2 ||t - q||^2, searched in
// polar coordinates: a coarse angle scan, golden refinement of the angle, and
// a golden search over the radius for each angle.
inline std::pair<double, double> prox_polar_oracle(double qh, double qv, double alpha, double beta) {
  auto f = [&](double th, double tv) {
    return alpha * std::sqrt(th * th + tv * tv) +
           0.5 * beta * ((th - qh) * (th - qh) + (tv - qv) * (tv - qv));
  };
  const double rmax = std::hypot(qh, qv) + 1.0;
  auto best_radius = [&](double theta) {
    return golden_min([&](double r) { return f(r * std::cos(theta), r * std::sin(theta)); }, 0.0, rmax);
  };
  auto profile = [&](double theta) {
    const double r = best_radius(theta);
    return f(r * std::cos(theta), r * std::sin(theta));
  };
  const int scan = 720;
  const double step = 2.0 * std::numbers::pi / scan;
  int best = 0;
  double best_val = profile(0.0);
  for (int i = 1; i < scan; ++i) {
    const double val = profile(i * step);
    if (val < best_val) {
      best_val = val;
      best = i;
    }
  }
  const double theta = golden_min(profile, (best - 1) * step, (best + 1) * step);
  const double r = best_radius(theta);
  const double th = r * std::cos(theta), tv = r * std::sin(theta);
  if (f(0.0, 0.0) <= f(th, tv)) return {0.0, 0.0};
  return {th, tv};
}

// Minimizer of alpha |t| + beta/2 (t - q)^2: the smallest t whose right
// derivative is nonnegative.
inline double prox_bisection_oracle(double q, double alpha, double beta) {
  double lo = -std::abs(q) - 1.0, hi = std::abs(q) + 1.0;
  auto right_derivative = [&](double t) { return beta * (t - q) + (t >= 0.0 ? alpha : -alpha); };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (right_derivative(mid) >= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace hwtv::test
