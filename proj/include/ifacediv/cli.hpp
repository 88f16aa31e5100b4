#pragma once

namespace ifacediv::cli {

/// Entry point of the ifacediv command-line tool. Returns the process exit
/// status (0 on success).
int run(int argc, const char* const* argv);

}  // namespace ifacediv::cli
