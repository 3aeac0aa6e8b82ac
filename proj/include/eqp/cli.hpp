#pragma once

#include <ostream>

namespace eqp::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidation = 1,
    kNumerical = 2,
    kIo = 3,
};

/// Runs one command line. The artifact goes to `out` (or --output), errors
/// go to `err` as a single JSON object, diagnostics as plain text lines.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eqp::cli
