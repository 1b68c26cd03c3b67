#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sptkit::cli {

// Runs one command line (args exclude the program name). Returns the process exit status:
// 0 success, 2 validation error, 3 numerical-check failure, 4 non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sptkit::cli
