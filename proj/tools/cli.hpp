#pragma once

#include <ostream>

namespace srgeo::cli {

/// Runs the command line. Returns the process exit code (0 ok, 1 check failure, 2 usage error).
int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err);

}  // namespace srgeo::cli
