#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramsey {

// Exit codes: 0 success, 1 negative-but-valid outcome (UNSAT, invalid
// certificate/coloring, timeout), 2 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ramsey
