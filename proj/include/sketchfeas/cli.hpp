#pragma once

#include <ostream>

namespace sketchfeas {

// Entry point of the `sketchfeas` tool. Exit codes: 0 success, 1 usage or
// parse error, 2 solver/convergence failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sketchfeas
