#pragma once

#include <functional>
#include <string>
#include <vector>

namespace spreadlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    std::string line() const;  // "criterion N: PASS|FAIL name: detail"
};

struct AcceptOptions {
    std::vector<int> only;  // empty runs all ten
    // Skip the k = 4 certification on Sp4(4):phi (about half an hour).
    bool quick = false;
    unsigned jobs = 1;
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run_acceptance(const AcceptOptions& opt);

}  // namespace spreadlab
