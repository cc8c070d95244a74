#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hwtv/image.hpp"
#include "hwtv/linops.hpp"

namespace hwtv {

// Per-pixel regularization weights. Every value lies in (0, 1/eps_floor].
struct AlphaMap {
  ImageBuffer values;
  int radius = 0;
  double eps_floor = 1e-4;
};

// Maximum-likelihood scale of a half-Laplacian (exponential) model for the
// local gradient norms: alpha_i = 1 / max(mean of norms in the (2r+1)^2
// periodic window around i, eps_floor). The window includes pixel i itself.
AlphaMap estimate_alpha(const ImageBuffer& u, TvNorm p, int r, double eps_floor = 1e-4);

// Same estimator applied to a precomputed raster of gradient norms (samples).
AlphaMap alpha_from_norms(const ImageBuffer& norms, int r, double eps_floor = 1e-4);

// Constant map, e.g. alpha = 1 for the scalar TV-L2 model.
AlphaMap constant_alpha(std::size_t width, std::size_t height, double value);

// Global discrepancy level delta = tau * sigma * sqrt(n).
class DiscrepancySpec {
 public:
  // Throws InvalidArgument unless sigma, tau > 0 and n > 0.
  DiscrepancySpec(double sigma, double tau, std::size_t n);

  double sigma() const noexcept { return sigma_; }
  double tau() const noexcept { return tau_; }
  std::size_t n() const noexcept { return n_; }
  double delta() const noexcept { return delta_; }

 private:
  double sigma_;
  double tau_;
  std::size_t n_;
  double delta_;
};

// Fidelity weight driving ||z|| towards delta: 0 when z_norm <= delta,
// otherwise beta_w * (z_norm / delta - 1). Rejects beta_w <= 0.
double update_mu(double z_norm, const DiscrepancySpec& disc, double beta_w);

// Draws x = -ln(U) / alpha with U uniform on (0, 1] from CounterRng(seed).
std::vector<double> sample_half_laplacian(double alpha, std::size_t count, std::uint64_t seed);

// Affine min-max rescale to [0, 1] for visualization; a constant map becomes 0.
ImageBuffer rescale_for_display(const ImageBuffer& values);

}  // namespace hwtv
