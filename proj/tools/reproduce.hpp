#pragma once

#include <string>

namespace tsqrt::cli {

// Golden-reference checks: recompute each bundled table/example and compare
// against the embedded expected values at the acceptance tolerances. Emits one
// CSV per target under out_dir plus a PASS/FAIL line per compared cell.
// Returns 0 when everything matches, 2 when any cell misses.
int run_reproduce(const std::string& which, const std::string& out_dir);

}  // namespace tsqrt::cli
