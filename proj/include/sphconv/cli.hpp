#pragma once

#include <filesystem>
#include <ostream>

#include "sphconv/quad.hpp"

namespace sphconv::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // scan found h < -tol, or verify reported a Fail
  kParseError = 2,   // bad expression, builtin name or flags
  kEvalError = 3,
  kIoError = 4,
};

/// Entry point shared by the executable and the tests. All normal output goes
/// to `out`; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Defaults with the angular node count taken from SPHCONV_NODES when set.
QuadratureConfig default_quadrature();

/// Writes the eight figure CSVs into `dir` (created if missing).
void write_figures(const std::filesystem::path& dir, const QuadratureConfig& config);

}  // namespace sphconv::cli
