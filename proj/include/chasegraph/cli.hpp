#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cg {

/// Exit codes: 0 success / holds / entailed, 1 refuted / not entailed /
/// unknown, 2 usage or parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cg
