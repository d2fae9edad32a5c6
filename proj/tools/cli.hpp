#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace citerank::cli {

// Runs the tool with `args` (program name excluded). Normal output goes to
// `out`, diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace citerank::cli
