#pragma once
// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with captured streams.
#include <iosfwd>
#include <string>
#include <vector>

namespace wulffkit::cli {

/// args excludes the program name. Returns 0 on success, 1 on a domain error
/// or failed validation check, 2 on a usage error, 3 on an internal error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wulffkit::cli
