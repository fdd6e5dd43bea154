#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plci {

// Full command-line front end. `args` excludes the program name. Returns
// the process exit code: 0 success, 1 query-level failure (failed --assert,
// constraint violation, non-membership in the completeness fragment or a
// sweep violation), 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace plci
