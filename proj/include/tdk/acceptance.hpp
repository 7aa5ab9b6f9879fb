#ifndef TDK_ACCEPTANCE_HPP
#define TDK_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace tdk {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

/// Runs the acceptance suite over the shipped corpus; never throws (an
/// exception inside a criterion is recorded as a failure).
std::vector<CriterionResult> run_acceptance();

}  // namespace tdk

#endif
