#pragma once

#include <string>
#include <vector>

namespace flyq {

/// Exit codes: 0 success, 1 numerical failure, 2 invalid config or
/// arguments, 3 truncation too small.
int cli_main(int argc, char** argv);

/// "start:stop:step" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

}  // namespace flyq
