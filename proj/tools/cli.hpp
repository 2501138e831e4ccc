#pragma once

#include <ostream>

namespace frobpush {

/// Command-line entry point. Exit codes: 0 every check passed, 1 a
/// verification failed, 2 bad arguments, configuration or input.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frobpush
