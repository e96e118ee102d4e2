#pragma once

#include <ostream>

namespace eisenrest::cli {

/// Entry point of the eisenrest tool. Returns the process exit status:
/// 0 success, 1 computation error or failed check, 2 flag or config error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eisenrest::cli
