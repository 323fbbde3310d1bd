#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blochlu {

// Dispatches the command line (without the program name). Returns the
// process exit code: compare uses 0 = Equivalent, 1 = Inequivalent,
// 2 = Inconclusive; other commands return 0 on success; all errors
// return 3.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace blochlu
