#include <iostream>

#include "distlab/acceptance.hpp"

int main() {
    int failed = 0;
    for (int id = 1; id <= distlab::kCriterionCount; ++id) {
        auto r = distlab::run_criterion(id);
        std::cout << distlab::format_line(r) << std::endl;
        failed += !r.pass;
    }
    std::cout << (distlab::kCriterionCount - failed) << "/" << distlab::kCriterionCount << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}
