#pragma once

#include <string>
#include <vector>

namespace opstar {

/// One acceptance criterion outcome.  The tolerances for each criterion are
/// pinned inside the implementation; they are part of the contract, not
/// configuration.
struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance();

/// Print one line per criterion ("criterion N PASS name: detail") and return
/// the number of failures.
int report_acceptance(const std::vector<CriterionResult>& results);

}  // namespace opstar
