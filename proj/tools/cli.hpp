// Command-line front end over every module.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scltopo {

/// Exit status: 0 when every asserted property holds, 1 for a negative
/// mathematical verdict, 2 for unusable input, 3 for an internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scltopo
