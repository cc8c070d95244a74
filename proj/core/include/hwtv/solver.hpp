#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "hwtv/adapt.hpp"
#include "hwtv/image.hpp"
#include "hwtv/linops.hpp"
#include "hwtv/spectral.hpp"

namespace hwtv {

// hwtv: per-pixel alpha re-estimated from u^(k) (see alpha_hold_after).
// tv_scalar: alpha fixed at 1 (classical TV-L2 with a discrepancy-driven mu).
enum class SolverMode { Hwtv, TvScalar };

// Shrinkage used for the anisotropic (p = 1) t-update. `Exact` is the
// component-wise soft threshold; `PaperVerbatim` shrinks the pair by
// max(1 - alpha / (beta_t ||q||_1), 0). Isotropic TV ignores this setting.
enum class ProxVariant { Exact, PaperVerbatim };

struct SolverConfig {
  TvNorm p = TvNorm::Isotropic;
  double beta_t = 20.0;
  double beta_w = 100.0;
  double tau = 1.0;
  int radius = 6;
  SolverMode mode = SolverMode::Hwtv;
  double eps_floor = 1e-4;
  int max_iter = 500;
  double tol = 1e-5;
  ProxVariant aniso_prox = ProxVariant::Exact;
  // alpha is re-estimated while k < alpha_hold_after and held afterwards.
  // 0 re-estimates on every iteration.
  int alpha_hold_after = 100;

  // Throws InvalidArgument on the first out-of-range field.
  void validate() const;
};

struct SolverState {
  ImageBuffer u;
  ImageBuffer w;
  GradientField t;
  ImageBuffer rho_w;
  GradientField rho_t;
  AlphaMap alpha;
  double mu = 0.0;
  int k = 0;
};

struct TraceRow {
  int k = 0;
  double mu = 0.0;
  double discrepancy = 0.0;  // ||K u^(k+1) - g||_2
  double rel_change = 0.0;   // ||u^(k+1) - u^(k)|| / ||u^(k)||
  double wall_ms = 0.0;      // since the start of the run
};

struct RestoreResult {
  ImageBuffer u_star;
  int iterations = 0;
  bool converged = false;  // rel_change reached tol before max_iter
  double final_mu = 0.0;
  double final_discrepancy = 0.0;
  AlphaMap alpha_final;
  std::vector<TraceRow> trace;
};

// t_i = argmin alpha_i ||t||_p + beta_t/2 ||t - q_i||_2^2 per pixel (see
// ProxVariant for p = 1). Zero input maps to zero.
GradientField prox_t(const GradientField& q, const ImageBuffer& alpha, double beta_t, TvNorm p,
                     ProxVariant variant = ProxVariant::Exact);

// w = beta_w / (mu + beta_w) * z.
ImageBuffer update_w(const ImageBuffer& z, double mu, double beta_w);

// sum_i alpha_i ||(Du)_i||_p + mu/2 ||Ku - g||_2^2.
double objective(const ImageBuffer& u, const ImageBuffer& g, const BlurSpec& blur,
                 const AlphaMap& alpha, double mu, TvNorm p);

// ADMM for the weighted-TV / L2 model with automatic alpha and mu.
// Initial state: u = g, w = Kg - g, t = Dg, multipliers zero.
class AdmmSolver {
 public:
  AdmmSolver(ImageBuffer g, const BlurSpec& blur, double sigma, const SolverConfig& cfg);

  const SolverState& state() const noexcept { return state_; }
  const SolverConfig& config() const noexcept { return cfg_; }
  const DiscrepancySpec& discrepancy() const noexcept { return disc_; }
  const SpectralPlan& plan() const noexcept { return plan_; }
  const ImageBuffer& observed() const noexcept { return g_; }

  // Pins alpha and mu; refresh_parameters() no longer changes them.
  void freeze_parameters(AlphaMap alpha, double mu);

  // alpha^(k) from u^(k) (hwtv mode) and mu^(k) from ||z^(k)||.
  void refresh_parameters();
  // t, w, u updates in that order.
  void update_primal();
  // rho_w -= beta_w (w - (Ku - g)); rho_t -= beta_t (t - Du).
  void update_dual();

  // One full iteration. Returns ||u^(k+1) - u^(k)|| / ||u^(k)||. Throws
  // Divergence if the iterate becomes non-finite.
  double iterate();

  // ||K u - g||_2 for the current u.
  double discrepancy_norm() const;
  // z = Ku - g + rho_w / beta_w for the current state.
  ImageBuffer z() const;
  // Augmented Lagrangian at the current (u, w, t; rho_w, rho_t; alpha, mu).
  double augmented_lagrangian() const;

  // Iterates until rel_change <= tol or max_iter is reached.
  RestoreResult run();

 private:
  ImageBuffer g_;
  SolverConfig cfg_;
  DiscrepancySpec disc_;
  SpectralPlan plan_;
  SolverState state_;
  ImageBuffer ku_;  // K u for the current u
  bool frozen_ = false;
};

RestoreResult restore(const ImageBuffer& g, const BlurSpec& blur, double sigma,
                      const SolverConfig& cfg);

// CSV with header k,mu,discrepancy,rel_change,wall_ms.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace hwtv
