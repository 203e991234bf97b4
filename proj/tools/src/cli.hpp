#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diffgeo::cli {

/// Runs one command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diffgeo::cli
