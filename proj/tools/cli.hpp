#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sv::cli {

// Runs one command. Exit status: 0 holds/ok, 1 fails, 2 input error, 3 resource bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sv::cli
