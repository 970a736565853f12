#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace slabdtn::selftest {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Run the full verification suite: every check the library promises, each
/// with its pinned tolerance and runtime budget.
std::vector<CriterionResult> run_all();

/// Print one PASS/FAIL line per criterion to `os`. Returns 0 when every
/// criterion passed, 1 otherwise.
int run_and_report(std::ostream& os);

}  // namespace slabdtn::selftest
