#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace hardrods {

struct CriterionResult {
    std::string name;
    bool pass = false;
    bool gating = true;
    double seconds = 0.0;
    std::string detail;
};

// Runs the oracle/property/certificate suite, one pass/fail line per
// criterion on `log`, ending with a total line. Exceptions inside a
// criterion count as its failure, never as a crash of the suite.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

// True when every gating criterion passed.
bool acceptance_green(const std::vector<CriterionResult>& results);

} // namespace hardrods
