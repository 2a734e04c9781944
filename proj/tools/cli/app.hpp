#pragma once

#include <iosfwd>

namespace qfm::cli {

// The whole command line; returns the exit status (0 pass, 1 check
// failure, 2 usage or parse error).
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfm::cli
