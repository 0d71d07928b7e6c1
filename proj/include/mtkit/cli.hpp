#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtkit {

/// Runs the `mtkit` command line. Returns 0 on success, 2 for usage
/// errors and 1 for resource or runtime errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtkit
