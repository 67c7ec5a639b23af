#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mcg {

/// Exit codes: 0 success, 1 a check or assertion failed, 2 usage, parse or model errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcg
