#include "hwtv/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwtv/adapt.hpp"
#include "hwtv/cli/sweep.hpp"
#include "hwtv/error.hpp"
#include "hwtv/metrics.hpp"
#include "hwtv/solver.hpp"
#include "hwtv/synth.hpp"

namespace hwtv::cli {

namespace {

using nlohmann::json;

struct BlurFlags {
  int band = 0;
  double sigma = 1.0;

  BlurSpec spec() const { return band == 0 ? BlurSpec::none() : BlurSpec::gaussian(band, sigma); }
};

struct SolverFlags {
  std::string mode = "hwtv";
  int p = 2;
  double tau = 1.0;
  int radius = 6;
  double beta_t = 20.0;
  double beta_w = 100.0;
  int max_iter = 500;
  double tol = 1e-5;
  double eps_floor = 1e-4;
  int alpha_hold_after = 100;
  std::string aniso_prox = "exact";

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.mode = mode == "tv_scalar" ? SolverMode::TvScalar : SolverMode::Hwtv;
    cfg.p = p == 1 ? TvNorm::Anisotropic : TvNorm::Isotropic;
    cfg.tau = tau;
    cfg.radius = radius;
    cfg.beta_t = beta_t;
    cfg.beta_w = beta_w;
    cfg.max_iter = max_iter;
    cfg.tol = tol;
    cfg.eps_floor = eps_floor;
    cfg.alpha_hold_after = alpha_hold_after;
    cfg.aniso_prox = aniso_prox == "paper" ? ProxVariant::PaperVerbatim : ProxVariant::Exact;
    return cfg;
  }
};

void add_blur(CLI::App* cmd, BlurFlags& f) {
  cmd->add_option("--blur-band", f.band, "Gaussian PSF side length, odd; 0 for no blur")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--blur-sigma", f.sigma, "Gaussian PSF standard deviation")
      ->check(CLI::PositiveNumber);
}

void add_solver(CLI::App* cmd, SolverFlags& f, bool single_cell) {
  cmd->add_option("--mode", f.mode, "hwtv or tv_scalar")
      ->check(CLI::IsMember({"hwtv", "tv_scalar"}));
  cmd->add_option("--p", f.p, "TV norm: 1 anisotropic, 2 isotropic")->check(CLI::IsMember({1, 2}));
  if (single_cell) {
    cmd->add_option("--tau", f.tau, "discrepancy factor")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", f.radius, "alpha window radius")->check(CLI::PositiveNumber);
  }
  cmd->add_option("--beta-t", f.beta_t, "penalty on t = Du")->check(CLI::PositiveNumber);
  cmd->add_option("--beta-w", f.beta_w, "penalty on w = Ku - g")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", f.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "relative-change stopping tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--eps-floor", f.eps_floor, "lower bound on local mean gradient norm")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alpha-hold-after", f.alpha_hold_after,
                  "iteration after which alpha is held fixed; 0 re-estimates every iteration")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--aniso-prox", f.aniso_prox, "p = 1 shrinkage: exact or paper")
      ->check(CLI::IsMember({"exact", "paper"}));
}

CLI::Option* add_format(CLI::App* cmd, std::string& format) {
  return cmd->add_option("--format", format, "output format: pgm8 or raw-f32")
      ->check(CLI::IsMember({"pgm8", "raw-f32"}));
}

std::optional<ImageFormat> requested_format(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return parse_format(name);
}

void require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw InvalidArgument(std::string(flag) + " must not be empty");
}

json isnr_json(double value) {
  if (std::isinf(value)) return "inf";
  return value;
}

int cmd_phantom(const std::string& out_path, const std::string& kind, std::size_t width,
                std::size_t height, double freq, double contrast, const std::string& format,
                std::ostream& out) {
  require_path(out_path, "--out");
  PhantomSpec spec;
  spec.width = width;
  spec.height = height;
  spec.texture_freq = freq;
  spec.contrast = contrast;
  spec.kind = kind == "cartoon"   ? PhantomKind::Cartoon
              : kind == "texture" ? PhantomKind::Texture
                                  : PhantomKind::Mixed;
  const ImageFormat fmt = output_format(out_path, requested_format(format));
  write_image(make_phantom(spec), out_path, fmt);
  out << json{{"command", "phantom"},    {"out", out_path},        {"kind", kind},
              {"width", width},          {"height", height},       {"texture_freq", freq},
              {"contrast", contrast},    {"format", format_name(fmt)}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_degrade(const std::string& in_path, const std::string& out_path, const BlurFlags& blur,
                double noise_sigma, std::uint64_t seed, const std::string& format,
                std::ostream& out) {
  require_path(out_path, "--out");
  const ImageBuffer u = read_image(in_path);
  const DegradationSpec spec{blur.spec(), noise_sigma, seed};
  const ImageFormat fmt = output_format(out_path, requested_format(format));
  write_image(degrade(u, spec), out_path, fmt);
  out << json{{"command", "degrade"},    {"in", in_path},          {"out", out_path},
              {"blur_band", blur.band},  {"blur_sigma", blur.sigma}, {"noise_sigma", noise_sigma},
              {"seed", seed},            {"format", format_name(fmt)}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_restore(const std::string& in_path, const std::string& out_path, const BlurFlags& blur,
                double noise_sigma, const SolverFlags& flags, const std::string& format,
                const std::string& trace_path, const std::string& alpha_path, std::ostream& out) {
  require_path(out_path, "--out");
  const ImageBuffer g = read_image(in_path);
  AdmmSolver solver(g, blur.spec(), noise_sigma, flags.config());
  const RestoreResult res = solver.run();

  write_image(res.u_star, out_path, output_format(out_path, requested_format(format)));
  if (!trace_path.empty()) {
    std::ofstream trace(trace_path, std::ios::binary);
    if (!trace) throw IoError("cannot open trace file " + trace_path);
    write_trace_csv(trace, res.trace);
    if (!trace) throw IoError("failed writing trace file " + trace_path);
  }
  if (!alpha_path.empty()) {
    const ImageFormat fmt = output_format(alpha_path, std::nullopt);
    const ImageBuffer& alpha = res.alpha_final.values;
    write_image(fmt == ImageFormat::RawF32 ? alpha : rescale_for_display(alpha), alpha_path, fmt);
  }
  out << json{{"command", "restore"},
              {"iterations", res.iterations},
              {"converged", res.converged},
              {"discrepancy", res.final_discrepancy},
              {"delta", solver.discrepancy().delta()},
              {"mu", res.final_mu}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_metrics(const std::string& ref_path, const std::string& deg_path,
                const std::string& rec_path, std::ostream& out) {
  const ImageBuffer ref = read_image(ref_path);
  const ImageBuffer deg = read_image(deg_path);
  const ImageBuffer rec = read_image(rec_path);
  require_same_shape(ref, deg, "metrics");
  require_same_shape(ref, rec, "metrics");
  double value = 0.0;
  try {
    value = isnr(deg, ref, rec);
  } catch (const InfiniteIsnr&) {
    value = std::numeric_limits<double>::infinity();
  }
  out << json{{"isnr", isnr_json(value)}, {"ssim", ssim(ref, rec)}}.dump() << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& ref_path, const std::string& in_path,
              const std::string& out_path, const BlurFlags& blur, double noise_sigma,
              const SolverFlags& flags, const std::string& tau_grid,
              const std::string& radius_grid, unsigned threads, bool timing, std::ostream& out) {
  require_path(out_path, "--out");
  SweepGrid grid;
  grid.tau_values = parse_tau_grid(tau_grid);
  grid.r_values = parse_radius_grid(radius_grid);
  grid.mode = flags.config().mode;
  grid.p = flags.config().p;
  grid.validate();

  SweepProblem problem{read_image(ref_path), read_image(in_path), blur.spec(), noise_sigma,
                       flags.config()};
  const auto rows = run_sweep(problem, grid, threads);

  std::ofstream csv(out_path, std::ios::binary);
  if (!csv) throw IoError("cannot open sweep output " + out_path);
  write_sweep_csv(csv, rows, timing);
  if (!csv) throw IoError("failed writing sweep output " + out_path);

  const SweepRow* best = nullptr;
  int diverged = 0;
  for (const auto& row : rows) {
    if (row.diverged) {
      ++diverged;
      continue;
    }
    if (!best || row.isnr > best->isnr) best = &row;
  }
  json summary{{"command", "sweep"}, {"out", out_path}, {"cells", rows.size()},
               {"diverged", diverged}};
  if (best) {
    summary["best"] = {{"tau", best->tau}, {"r", best->r}, {"isnr", isnr_json(best->isnr)},
                       {"ssim", best->ssim}};
  }
  out << summary.dump() << '\n';
  return kExitOk;
}

}  // namespace

ImageFormat output_format(const std::filesystem::path& path,
                          std::optional<ImageFormat> requested) {
  if (requested) return *requested;
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".tvf" || ext == ".raw" || ext == ".f32") return ImageFormat::RawF32;
  return ImageFormat::Pgm8;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatially adaptive total-variation image restoration", "hwtv"};
  app.require_subcommand(1);

  std::string in_path, out_path, format, kind = "mixed";
  std::string ref_path, deg_path, rec_path, trace_path, alpha_path;
  std::string tau_grid = "0.85:0.01:1.05", radius_grid = "2,6,10,14";
  std::size_t width = 128, height = 128;
  double freq = 8.0, contrast = 0.8, noise_sigma = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool no_timing = false;
  BlurFlags blur;
  SolverFlags solver;

  auto* phantom = app.add_subcommand("phantom", "write a synthetic test image");
  phantom->add_option("--out", out_path, "output image")->required();
  phantom->add_option("--kind", kind, "cartoon, texture or mixed")
      ->check(CLI::IsMember({"cartoon", "texture", "mixed"}));
  phantom->add_option("--width", width, "image width")->check(CLI::PositiveNumber);
  phantom->add_option("--height", height, "image height")->check(CLI::PositiveNumber);
  phantom->add_option("--texture-freq", freq, "texture cycles per image side")
      ->check(CLI::PositiveNumber);
  phantom->add_option("--contrast", contrast, "contrast in (0, 1]");
  add_format(phantom, format);

  auto* degrade_cmd = app.add_subcommand("degrade", "blur and add Gaussian noise");
  degrade_cmd->add_option("--in", in_path, "clean input image")->required();
  degrade_cmd->add_option("--out", out_path, "degraded output image")->required();
  degrade_cmd->add_option("--noise-sigma", noise_sigma, "noise standard deviation")
      ->required()
      ->check(CLI::PositiveNumber);
  degrade_cmd->add_option("--seed", seed, "noise seed");
  add_blur(degrade_cmd, blur);
  add_format(degrade_cmd, format);

  auto* restore_cmd = app.add_subcommand("restore", "restore a degraded image");
  restore_cmd->add_option("--in", in_path, "degraded input image")->required();
  restore_cmd->add_option("--out", out_path, "restored output image")->required();
  restore_cmd->add_option("--noise-sigma", noise_sigma, "true noise standard deviation")
      ->required()
      ->check(CLI::PositiveNumber);
  restore_cmd->add_option("--trace", trace_path, "per-iteration CSV trace");
  restore_cmd->add_option("--alpha-out", alpha_path,
                          "final alpha map; pgm8 is min-max rescaled, raw-f32 keeps values");
  add_blur(restore_cmd, blur);
  add_solver(restore_cmd, solver, true);
  add_format(restore_cmd, format);

  auto* metrics_cmd = app.add_subcommand("metrics", "ISNR and SSIM of a restoration");
  metrics_cmd->add_option("--ref", ref_path, "ground truth")->required();
  metrics_cmd->add_option("--deg", deg_path, "degraded observation")->required();
  metrics_cmd->add_option("--rec", rec_path, "restoration")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "grid over tau and radius, CSV output");
  sweep_cmd->add_option("--ref", ref_path, "ground truth")->required();
  sweep_cmd->add_option("--in", in_path, "degraded observation")->required();
  sweep_cmd->add_option("--out", out_path, "CSV output")->required();
  sweep_cmd->add_option("--noise-sigma", noise_sigma, "true noise standard deviation")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--tau-grid", tau_grid, "a:step:b or comma list");
  sweep_cmd->add_option("--radius-grid", radius_grid, "comma list of radii");
  sweep_cmd->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--no-timing", no_timing, "write wall_ms as 0 for reproducible output");
  add_blur(sweep_cmd, blur);
  add_solver(sweep_cmd, solver, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hwtv: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (blur.band != 0 && blur.band % 2 == 0) {
      throw InvalidArgument("--blur-band must be odd or 0");
    }
    if (*phantom) {
      return cmd_phantom(out_path, kind, width, height, freq, contrast, format, out);
    }
    if (*degrade_cmd) {
      return cmd_degrade(in_path, out_path, blur, noise_sigma, seed, format, out);
    }
    if (*restore_cmd) {
      return cmd_restore(in_path, out_path, blur, noise_sigma, solver, format, trace_path,
                         alpha_path, out);
    }
    if (*metrics_cmd) return cmd_metrics(ref_path, deg_path, rec_path, out);
    return cmd_sweep(ref_path, in_path, out_path, blur, noise_sigma, solver, tau_grid,
                     radius_grid, threads, !no_timing, out);
  } catch (const Divergence& e) {
    err << "hwtv: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const InvalidArgument& e) {
    err << "hwtv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    err << "hwtv: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "hwtv: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace hwtv::cli
