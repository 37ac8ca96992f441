#pragma once

#include <string>
#include <vector>

namespace rograd {

struct VerifyResult {
    std::string suite, subject;
    long checks = 0, violations = 0;
    std::vector<std::string> failures;
    double seconds = 0;
};

// suites: pairs, peirce, lie, cocycles, torsion, all
std::vector<std::string> verify_suites();
std::vector<VerifyResult> run_verify(const std::string& suite);

}
