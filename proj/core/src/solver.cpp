#include "hwtv/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "hwtv/error.hpp"

namespace hwtv {

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument(std::string(name) + " must be positive, got " + std::to_string(v));
    }
  };
  positive(beta_t, "beta_t");
  positive(beta_w, "beta_w");
  positive(tau, "tau");
  positive(tol, "tol");
  positive(eps_floor, "eps_floor");
  if (radius < 1) throw InvalidArgument("radius must be a positive integer");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  if (alpha_hold_after < 0) throw InvalidArgument("alpha_hold_after must be nonnegative");
  if (p != TvNorm::Anisotropic && p != TvNorm::Isotropic) throw InvalidArgument("p must be 1 or 2");
}

GradientField prox_t(const GradientField& q, const ImageBuffer& alpha, double beta_t, TvNorm p,
                     ProxVariant variant) {
  if (!q.same_shape(alpha)) throw DimensionMismatch("prox_t: alpha map does not match field");
  if (!(beta_t > 0.0)) throw InvalidArgument("prox_t: beta_t must be positive");
  GradientField t(q.width, q.height);
  const double inv_beta = 1.0 / beta_t;
  if (p == TvNorm::Anisotropic && variant == ProxVariant::Exact) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double thr = alpha[i] * inv_beta;
      const double ah = std::abs(q.h[i]) - thr;
      const double av = std::abs(q.v[i]) - thr;
      t.h[i] = ah > 0.0 ? std::copysign(ah, q.h[i]) : 0.0;
      t.v[i] = av > 0.0 ? std::copysign(av, q.v[i]) : 0.0;
    }
    return t;
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double norm = pixel_norm(q.h[i], q.v[i], p);
    if (norm == 0.0) continue;
    const double factor = 1.0 - alpha[i] * inv_beta / norm;
    if (factor > 0.0) {
      t.h[i] = factor * q.h[i];
      t.v[i] = factor * q.v[i];
    }
  }
  return t;
}

ImageBuffer update_w(const ImageBuffer& z, double mu, double beta_w) {
  if (!(beta_w > 0.0)) throw InvalidArgument("update_w: beta_w must be positive");
  if (!(mu >= 0.0)) throw InvalidArgument("update_w: mu must be nonnegative");
  const double factor = beta_w / (mu + beta_w);
  ImageBuffer w = z;
  for (double& v : w) v *= factor;
  return w;
}

double objective(const ImageBuffer& u, const ImageBuffer& g, const BlurSpec& blur,
                 const AlphaMap& alpha, double mu, TvNorm p) {
  require_same_shape(u, g, "objective");
  require_same_shape(u, alpha.values, "objective");
  const GradientField du = gradient(u);
  double tv = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) tv += alpha.values[i] * pixel_norm(du.h[i], du.v[i], p);
  const double fit = distance2(blur_apply(u, blur), g);
  return tv + 0.5 * mu * fit * fit;
}

AdmmSolver::AdmmSolver(ImageBuffer g, const BlurSpec& blur, double sigma, const SolverConfig& cfg)
    : g_(std::move(g)),
      cfg_(cfg),
      disc_(sigma, cfg.tau, g_.size()),
      plan_(build_plan(g_.width(), g_.height(), blur)) {
  cfg_.validate();
  g_.require_finite("observed image");
  if (cfg_.mode == SolverMode::Hwtv) {
    const std::size_t side = 2 * static_cast<std::size_t>(cfg_.radius) + 1;
    if (side > g_.width() || side > g_.height()) {
      throw InvalidArgument("radius " + std::to_string(cfg_.radius) +
                            " gives a window larger than the image");
    }
  }
  state_.u = g_;
  ku_ = plan_.blur(g_);
  state_.w = ku_;
  for (std::size_t i = 0; i < g_.size(); ++i) state_.w[i] -= g_[i];
  state_.t = gradient(g_);
  state_.rho_w = ImageBuffer(g_.width(), g_.height());
  state_.rho_t = GradientField(g_.width(), g_.height());
  state_.alpha = constant_alpha(g_.width(), g_.height(), 1.0);
}

void AdmmSolver::freeze_parameters(AlphaMap alpha, double mu) {
  require_same_shape(alpha.values, g_, "freeze_parameters");
  if (!(mu >= 0.0)) throw InvalidArgument("frozen mu must be nonnegative");
  state_.alpha = std::move(alpha);
  state_.mu = mu;
  frozen_ = true;
}

ImageBuffer AdmmSolver::z() const {
  ImageBuffer z = ku_;
  const double inv_bw = 1.0 / cfg_.beta_w;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += state_.rho_w[i] * inv_bw - g_[i];
  return z;
}

void AdmmSolver::refresh_parameters() {
  if (frozen_) return;
  const bool held = cfg_.alpha_hold_after > 0 && state_.k >= cfg_.alpha_hold_after;
  if (cfg_.mode == SolverMode::Hwtv && !held) {
    state_.alpha = estimate_alpha(state_.u, cfg_.p, cfg_.radius, cfg_.eps_floor);
  }
  state_.mu = update_mu(norm2(z()), disc_, cfg_.beta_w);
}

void AdmmSolver::update_primal() {
  const double inv_bt = 1.0 / cfg_.beta_t;
  const double inv_bw = 1.0 / cfg_.beta_w;

  GradientField q = gradient(state_.u);
  for (std::size_t i = 0; i < q.size(); ++i) {
    q.h[i] += state_.rho_t.h[i] * inv_bt;
    q.v[i] += state_.rho_t.v[i] * inv_bt;
  }
  state_.t = prox_t(q, state_.alpha.values, cfg_.beta_t, cfg_.p, cfg_.aniso_prox);
  state_.w = update_w(z(), state_.mu, cfg_.beta_w);

  GradientField shifted = state_.t;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    shifted.h[i] -= state_.rho_t.h[i] * inv_bt;
    shifted.v[i] -= state_.rho_t.v[i] * inv_bt;
  }
  ImageBuffer fit = state_.w;
  for (std::size_t i = 0; i < fit.size(); ++i) fit[i] += g_[i] - state_.rho_w[i] * inv_bw;

  const double ratio = cfg_.beta_w / cfg_.beta_t;
  ImageBuffer rhs = divergence(shifted);
  const ImageBuffer kt_fit = plan_.blur_adjoint(fit);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += ratio * kt_fit[i];

  state_.u = plan_.solve(rhs, ratio);
  ku_ = plan_.blur(state_.u);
}

void AdmmSolver::update_dual() {
  const GradientField du = gradient(state_.u);
  for (std::size_t i = 0; i < g_.size(); ++i) {
    state_.rho_w[i] -= cfg_.beta_w * (state_.w[i] - (ku_[i] - g_[i]));
    state_.rho_t.h[i] -= cfg_.beta_t * (state_.t.h[i] - du.h[i]);
    state_.rho_t.v[i] -= cfg_.beta_t * (state_.t.v[i] - du.v[i]);
  }
}

double AdmmSolver::iterate() {
  const ImageBuffer previous = state_.u;
  refresh_parameters();
  update_primal();
  update_dual();
  if (!std::isfinite(state_.mu) || !state_.u.all_finite() || !state_.rho_w.all_finite() ||
      !state_.rho_t.all_finite()) {
    throw Divergence(state_.k);
  }
  ++state_.k;
  const double change = distance2(state_.u, previous);
  const double base = norm2(previous);
  if (base > 0.0) return change / base;
  return change;
}

double AdmmSolver::discrepancy_norm() const { return distance2(ku_, g_); }

double AdmmSolver::augmented_lagrangian() const {
  const GradientField du = gradient(state_.u);
  double value = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) {
    const double th = state_.t.h[i];
    const double tv = state_.t.v[i];
    const double rh = th - du.h[i];
    const double rv = tv - du.v[i];
    const double rw = state_.w[i] - (ku_[i] - g_[i]);
    value += state_.alpha.values[i] * pixel_norm(th, tv, cfg_.p);
    value += 0.5 * state_.mu * state_.w[i] * state_.w[i];
    value += -(state_.rho_t.h[i] * rh + state_.rho_t.v[i] * rv) +
             0.5 * cfg_.beta_t * (rh * rh + rv * rv);
    value += -state_.rho_w[i] * rw + 0.5 * cfg_.beta_w * rw * rw;
  }
  return value;
}

RestoreResult AdmmSolver::run() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  RestoreResult result;
  result.trace.reserve(static_cast<std::size_t>(cfg_.max_iter));
  while (state_.k < cfg_.max_iter) {
    const double change = iterate();
    const double elapsed =
        std::chrono::duration<double, std::milli>(clock::now() - start).count();
    result.trace.push_back({state_.k - 1, state_.mu, discrepancy_norm(), change, elapsed});
    if (change <= cfg_.tol) {
      result.converged = true;
      break;
    }
  }
  result.u_star = state_.u;
  result.iterations = state_.k;
  result.final_mu = state_.mu;
  result.final_discrepancy = discrepancy_norm();
  result.alpha_final = state_.alpha;
  return result;
}

RestoreResult restore(const ImageBuffer& g, const BlurSpec& blur, double sigma,
                      const SolverConfig& cfg) {
  return AdmmSolver(g, blur, sigma, cfg).run();
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "k,mu,discrepancy,rel_change,wall_ms\n";
  char line[256];
  for (const auto& row : trace) {
    std::snprintf(line, sizeof line, "%d,%.12g,%.12g,%.12g,%.3f\n", row.k, row.mu,
                  row.discrepancy, row.rel_change, row.wall_ms);
    out << line;
  }
}

}  // namespace hwtv
