#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aszl {

// One acceptance criterion outcome. `detail` carries the measured quantities
// (worst deviations, counts, timings) for the report line.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Runs the acceptance criteria. `fast` trims family sizes for a quick smoke
// pass; the full level runs every criterion at its stated tolerance.
std::vector<CriterionResult> run_acceptance(bool fast, int workers = 1);

// Prints one "PASS criterion N" / "FAIL criterion N" line per result and
// returns the number of failures.
int print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace aszl
