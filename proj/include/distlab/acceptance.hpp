#pragma once

// The twelve acceptance criteria, shared by the acceptance binary and
// the CLI's --verify-all.

#include <cstdint>
#include <string>
#include <vector>

namespace distlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct SuiteOptions {
    std::uint32_t seed = 1;          // sampled J identities
    bool inject_sign_error = false;  // mutation test for the propagation check
};

constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, const SuiteOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt = {});
std::string format_line(const CriterionResult& r);

}  // namespace distlab
