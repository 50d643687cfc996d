#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace obo::cli {

// Runs one command line (without the program name). Returns the process exit
// code: 0 success, 1 invalid input or usage, 2 solver failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obo::cli
