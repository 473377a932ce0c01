#pragma once

#include <ostream>

namespace hyperdist::cli {

// Runs one command line. Exit codes: 0 all checks pass, 1 a verification
// failed, 2 usage error or infeasible input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperdist::cli
