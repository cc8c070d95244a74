#include "hwtv/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "hwtv/error.hpp"
#include "hwtv/metrics.hpp"

namespace hwtv::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

double to_double(std::string_view text) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

int to_int(std::string_view text) {
  const std::string_view s = trim(text);
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void SweepGrid::validate() const {
  if (tau_values.empty()) throw InvalidArgument("tau grid is empty");
  if (r_values.empty()) throw InvalidArgument("radius grid is empty");
  for (double t : tau_values) {
    if (!(t > 0.0)) throw InvalidArgument("tau values must be positive");
  }
  for (int r : r_values) {
    if (r < 1) throw InvalidArgument("radius values must be positive integers");
  }
}

std::vector<double> parse_tau_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) return {};
  const auto range = split(text, ':');
  if (range.size() == 3) {
    const double a = to_double(range[0]);
    const double step = to_double(range[1]);
    const double b = to_double(range[2]);
    if (!(step > 0.0)) throw InvalidArgument("tau grid step must be positive");
    if (b < a) throw InvalidArgument("tau grid end lies before its start");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000) throw InvalidArgument("tau grid has too many values");
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12;
    }
    return values;
  }
  if (range.size() != 1) throw InvalidArgument("tau grid must be a:step:b or a comma list");
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(to_double(part));
  return values;
}

std::vector<int> parse_radius_grid(std::string_view text) {
  text = trim(text);
  if (text.empty()) return {};
  std::vector<int> values;
  for (auto part : split(text, ',')) values.push_back(to_int(part));
  return values;
}

std::vector<SweepRow> run_sweep(const SweepProblem& problem, const SweepGrid& grid,
                                unsigned threads) {
  grid.validate();
  require_same_shape(problem.truth, problem.observed, "sweep");

  std::vector<SweepRow> rows(grid.size());
  for (std::size_t i = 0; i < grid.tau_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.r_values.size(); ++j) {
      SweepRow& row = rows[i * grid.r_values.size() + j];
      row.tau = grid.tau_values[i];
      row.r = grid.r_values[j];
    }
  }
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.tau != b.tau ? a.tau < b.tau : a.r < b.r;
  });

  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto run_cell = [&](SweepRow& row) {
    SolverConfig cfg = problem.base;
    cfg.tau = row.tau;
    cfg.radius = row.r;
    cfg.mode = grid.mode;
    cfg.p = grid.p;
    const auto start = std::chrono::steady_clock::now();
    try {
      const RestoreResult res = restore(problem.observed, problem.blur, problem.sigma, cfg);
      row.iterations = res.iterations;
      row.final_discrepancy = res.final_discrepancy;
      row.ssim = ssim(problem.truth, res.u_star);
      try {
        row.isnr = isnr(problem.observed, problem.truth, res.u_star);
      } catch (const InfiniteIsnr&) {
        row.isnr = std::numeric_limits<double>::infinity();
      }
    } catch (const Divergence& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.diverged = true;
      row.iterations = e.iteration();
      row.isnr = row.ssim = row.final_discrepancy = nan;
    }
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, rows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        run_cell(rows[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = rows.size();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool timing) {
  out << "tau,r,isnr,ssim,iterations,wall_ms,final_discrepancy\n";
  char line[256];
  for (const auto& row : rows) {
    std::snprintf(line, sizeof line, "%.10g,%d,%.10g,%.10g,%d,%.3f,%.10g\n", row.tau, row.r,
                  row.isnr, row.ssim, row.iterations, timing ? row.wall_ms : 0.0,
                  row.final_discrepancy);
    out << line;
  }
}

}  // namespace hwtv::cli
