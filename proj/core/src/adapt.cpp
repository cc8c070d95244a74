#include "hwtv/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hwtv/error.hpp"
#include "hwtv/rng.hpp"

namespace hwtv {

AlphaMap alpha_from_norms(const ImageBuffer& norms, int r, double eps_floor) {
  if (!(eps_floor > 0.0)) throw InvalidArgument("eps_floor must be positive");
  AlphaMap out{box_mean(norms, r), r, eps_floor};
  for (double& m : out.values) m = 1.0 / std::max(m, eps_floor);
  return out;
}

AlphaMap estimate_alpha(const ImageBuffer& u, TvNorm p, int r, double eps_floor) {
  return alpha_from_norms(gradient_norms(gradient(u), p), r, eps_floor);
}

AlphaMap constant_alpha(std::size_t width, std::size_t height, double value) {
  if (!(value > 0.0)) throw InvalidArgument("alpha must be positive");
  return AlphaMap{ImageBuffer(width, height, value), 0, 1.0 / value};
}

DiscrepancySpec::DiscrepancySpec(double sigma, double tau, std::size_t n)
    : sigma_(sigma), tau_(tau), n_(n), delta_(tau * sigma * std::sqrt(static_cast<double>(n))) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
  if (n == 0) throw InvalidArgument("pixel count must be positive");
}

double update_mu(double z_norm, const DiscrepancySpec& disc, double beta_w) {
  if (!(beta_w > 0.0)) {
    throw InvalidArgument("beta_w must be positive, got " + std::to_string(beta_w));
  }
  if (z_norm <= disc.delta()) return 0.0;
  return beta_w * (z_norm / disc.delta() - 1.0);
}

std::vector<double> sample_half_laplacian(double alpha, std::size_t count, std::uint64_t seed) {
  if (!(alpha > 0.0)) throw InvalidArgument("half-Laplacian scale must be positive");
  CounterRng rng(seed);
  std::vector<double> out(count);
  for (double& x : out) x = -std::log(rng.next_uniform_open_zero()) / alpha;
  return out;
}

ImageBuffer rescale_for_display(const ImageBuffer& values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  ImageBuffer out(values.width(), values.height());
  const double range = *hi - *lo;
  if (range > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  }
  return out;
}

}  // namespace hwtv
