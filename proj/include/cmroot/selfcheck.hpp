#pragma once

#include <string>
#include <vector>

namespace cmroot {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The library invariant suite.  quick mode shrinks sweep bounds; the check
// list and output are deterministic either way.
std::vector<CheckResult> run_selftest(bool quick, int threads = 1);

} // namespace cmroot
