#pragma once

#include <cstddef>
#include <ostream>
#include <string_view>
#include <vector>

#include "hwtv/image.hpp"
#include "hwtv/linops.hpp"
#include "hwtv/solver.hpp"

namespace hwtv::cli {

struct SweepGrid {
  std::vector<double> tau_values;
  std::vector<int> r_values;
  SolverMode mode = SolverMode::Hwtv;
  TvNorm p = TvNorm::Isotropic;

  std::size_t size() const noexcept { return tau_values.size() * r_values.size(); }
  // Throws InvalidArgument for an empty grid or a nonpositive entry.
  void validate() const;
};

struct SweepRow {
  double tau = 0.0;
  int r = 0;
  double isnr = 0.0;
  double ssim = 0.0;
  int iterations = 0;
  double wall_ms = 0.0;
  double final_discrepancy = 0.0;
  bool diverged = false;
};

// "a:step:b" (inclusive of b up to rounding) or a comma-separated list.
std::vector<double> parse_tau_grid(std::string_view text);
// Comma-separated positive integers.
std::vector<int> parse_radius_grid(std::string_view text);

struct SweepProblem {
  ImageBuffer truth;
  ImageBuffer observed;
  BlurSpec blur;
  double sigma = 0.05;
  SolverConfig base;  // tau, radius, mode and p are overridden per cell
};

// One row per (tau, r) cell, sorted by (tau, r). Cells run on at most
// `threads` workers. A diverged cell is reported with diverged = true and
// NaN metrics instead of aborting the sweep.
std::vector<SweepRow> run_sweep(const SweepProblem& problem, const SweepGrid& grid,
                                unsigned threads);

// Header tau,r,isnr,ssim,iterations,wall_ms,final_discrepancy. With
// timing = false every wall_ms cell is written as 0.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing = true);

}  // namespace hwtv::cli
