#include <gtest/gtest.h>

#include "distlab/acceptance.hpp"
#include "distlab/errors.hpp"

using namespace distlab;

TEST(Acceptance, FastCriteriaPass) {
    for (int id : {1, 2, 5}) {
        auto r = run_criterion(id);
        EXPECT_TRUE(r.pass) << format_line(r);
    }
}

TEST(Acceptance, InjectedSignErrorFailsOnlyPropagation) {
    SuiteOptions bad;
    bad.inject_sign_error = true;
    auto r = run_criterion(8, bad);
    EXPECT_FALSE(r.pass);
    EXPECT_NE(r.detail.find("propagation residual"), std::string::npos);
    EXPECT_TRUE(run_criterion(8).pass);
    EXPECT_TRUE(run_criterion(10, bad).pass);
}

TEST(Acceptance, LineFormat) {
    CriterionResult r{3, "hom dimensions at s0", true, "ok", 0};
    EXPECT_EQ(format_line(r), "criterion  3  PASS  hom dimensions at s0: ok");
    EXPECT_THROW(run_criterion(13), ConfigError);
}
