#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gfbimap {

// Dispatches one CLI invocation.  Exit codes: 0 success, 1 input error,
// 2 cap exceeded (partial results are still emitted when available).
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace gfbimap
