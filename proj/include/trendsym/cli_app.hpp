#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trendsym {

// Full command-line front end. Returns the process exit code:
//   0 success, 1 usage error, 2 data error, 3 no plausible symmetry point.
// All output goes to the supplied streams (or to --out when given), so the
// CLI is directly testable in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace trendsym
