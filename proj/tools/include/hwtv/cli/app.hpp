#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hwtv/image_io.hpp"

namespace hwtv::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O or malformed input file
  kExitUsage = 2,
  kExitDiverged = 3,
};

// Runs one invocation. `args` excludes the program name. Summaries go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// --format if given, else the file extension (.pgm, .tvf/.raw/.f32), else pgm8.
ImageFormat output_format(const std::filesystem::path& path,
                          std::optional<ImageFormat> requested);

}  // namespace hwtv::cli
