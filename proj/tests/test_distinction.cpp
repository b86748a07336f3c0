#include <gtest/gtest.h>

#include <cmath>

#include "distlab/distinction.hpp"

using namespace distlab;

namespace {

std::vector<PairData> pairs_of(i64 q, int delta, int f) {
    auto P = FieldParams::make(q, delta);
    i64 n = ipow(q, f) - 1;
    std::vector<PairData> out;
    for (i64 a = 0; a < n; ++a) {
        try {
            out.push_back(build_pair_data(P, f, TameCharacter{MulCharacter(n, a), Angle()}));
        } catch (const Error&) {
        }
    }
    return out;
}

PairData with_chi0(i64 q, int delta, int f, i64 chi0_exp) {
    for (auto& p : pairs_of(q, delta, f))
        if (p.chi0.a == chi0_exp && p.central.is_trivial()) return p;
    throw std::runtime_error("no such pair");
}

PairData central_trivial(i64 q, int delta, int f) {
    for (auto& p : pairs_of(q, delta, f))
        if (p.central.is_trivial()) return p;
    throw std::runtime_error("no such pair");
}

}  // namespace

TEST(Assemble, FOneHasOnlySteinbergRows) {
    auto pair = central_trivial(3, 2, 1);
    auto sys = assemble(pair, build_tree(9, 2, TreeCase::Ramified));
    for (const auto& c : sys.components) EXPECT_EQ(c.kind, ComponentKind::Steinberg);
    EXPECT_EQ(sys.block_count(RowTag::JFixedness), 0);
    EXPECT_EQ(sys.block_count(RowTag::UniformizerShift), 0);
    EXPECT_EQ(sys.block_count(RowTag::FrobeniusShift), 0);
    EXPECT_EQ(sys.cols, 3 * 9);
}

// f = 2, Q = 9: V_s = W^0 + W^1 + U^{0,1}, dims 9, 9, 10.
TEST(Assemble, RowAuditFTwo) {
    auto pair = central_trivial(3, 2, 2);
    auto sys = assemble(pair, build_tree(9, 2, TreeCase::Ramified));
    ASSERT_EQ(sys.components.size(), 3u);
    EXPECT_EQ(sys.cols, 3 * 28);
    EXPECT_EQ(sys.block_count(RowTag::JFixedness), 1);
    EXPECT_EQ(sys.block_count(RowTag::UniformizerShift), 1);
    EXPECT_EQ(sys.row_count(RowTag::JFixedness), 10);
    EXPECT_EQ(sys.row_count(RowTag::UniformizerShift), 10);
    EXPECT_EQ(sys.block_count(RowTag::FrobeniusShift), 1);
    EXPECT_EQ(sys.row_count(RowTag::FrobeniusShift), 9);
    // torus generator and scalar at s0, one block each per component
    EXPECT_EQ(sys.row_count(RowTag::InvarianceS0), 28);
    EXPECT_EQ(sys.row_count(RowTag::CentralCharacter), 28);
    int tagged = 0;
    for (const auto& b : sys.row_blocks) tagged += b.count;
    EXPECT_EQ(tagged, sys.rows);
}

TEST(Assemble, CentralObstructionThrows) {
    for (const auto& p : pairs_of(3, 2, 2))
        if (!p.central.is_trivial()) {
            EXPECT_THROW(assemble(p, build_tree(9, 1, TreeCase::Ramified)), CentralCharacterObstruction);
            auto rep = run_distinction(p, 2);
            EXPECT_TRUE(rep.central_obstruction);
            EXPECT_EQ(rep.verdict, kNotDistinguished);
        }
}

TEST(Assemble, DepthLimitKeepsS0Only) {
    auto pair = central_trivial(3, 2, 2);
    AssembleOptions opt;
    opt.depth_limit = 0;
    auto sys = assemble(pair, build_tree(9, 2, TreeCase::Ramified), opt);
    EXPECT_EQ(sys.radius, 0);
    EXPECT_EQ(sys.cols, 28);
    EXPECT_EQ(sys.block_count(RowTag::Gluing), 0);
}

TEST(Solve, FThreeInducedBlocksVanish) {
    auto pair = with_chi0(3, 3, 3, 1);
    auto tree = build_tree(27, 2, TreeCase::Ramified);
    auto sys = assemble(pair, tree);
    auto res = solve(sys);
    EXPECT_EQ(res.nullity, 1);
    EXPECT_LT(induced_null_part(sys, res), 1e-9);
}

TEST(Solve, FOddTrivialChi0NotDistinguished) {
    int seen = 0;
    for (int delta : {1, 3})
        for (const auto& p : pairs_of(3, delta, delta)) {
            if (!is_trivial_on_subfield(p.chi0, 3)) continue;
            ++seen;
            EXPECT_EQ(run_distinction(p, 2).verdict, kNotDistinguished) << "a=" << p.chi_f.residue.a;
        }
    EXPECT_GT(seen, 0);
}

TEST(Solve, FEvenEvenExponentsVanish) {
    for (const auto& p : pairs_of(3, 2, 2)) {
        if (!p.central.is_trivial() || p.chi_f.residue.a % 2 == 1) continue;
        auto rep = run_distinction(p, 3);
        for (auto [R, n] : rep.nullity_by_R) EXPECT_EQ(n, 0) << "a=" << p.chi_f.residue.a << " R=" << R;
    }
}

// The Steinberg family left open when chi0 has order 2 on k^x and f is even.
TEST(Solve, FEvenOrderTwoLeavesSteinbergFamily) {
    for (const auto& p : pairs_of(3, 2, 2)) {
        if (!p.central.is_trivial() || p.chi_f.residue.a % 2 == 0) continue;
        auto rep = run_distinction(p, 2);
        EXPECT_EQ(rep.nullity_by_R.back().second, 1);
        EXPECT_LT(rep.induced_residual, 1e-9);
        ASSERT_TRUE(rep.propagation);
        EXPECT_LT(rep.propagation->max_residual, 1e-8);
    }
}

TEST(Solve, MultiplicityAndMonotonicity) {
    for (int delta : {1, 2, 3})
        for (int f = 1; f <= delta; ++f) {
            if (delta % f) continue;
            for (const auto& p : pairs_of(3, delta, f)) {
                auto rep = run_distinction(p, delta == 3 ? 2 : 3);
                EXPECT_TRUE(rep.monotone);
                for (auto [R, n] : rep.nullity_by_R) EXPECT_LE(n, 1);
            }
        }
}

TEST(Propagation, Coefficients) {
    EXPECT_DOUBLE_EQ(propagation_coefficient(27, 1), 28.0 / 54.0);
    EXPECT_DOUBLE_EQ(propagation_coefficient(27, 2), -28.0 / (2.0 * 729.0));
    EXPECT_DOUBLE_EQ(propagation_coefficient(9, 3), 10.0 / (2.0 * 729.0));
}

TEST(Propagation, MatchesWitnessAndCatchesSignFlip) {
    auto pair = with_chi0(3, 3, 3, 1);
    auto tree = build_tree(27, 3, TreeCase::Ramified);
    auto sys = assemble(pair, tree);
    auto res = solve(sys);
    ASSERT_EQ(res.nullity, 1);
    auto pc = check_propagation_formula(sys, res.witness, tree);
    EXPECT_TRUE(pc.applicable);
    EXPECT_GT(std::abs(pc.C), 1e-6);
    EXPECT_LT(pc.max_residual, 1e-8);
    EXPECT_LT(pc.s0_kernel_residual, 1e-8);
    EXPECT_EQ(pc.vertices_checked, 3 * (tree.size() - 1));  // one per Steinberg component
    auto bad = check_propagation_formula(sys, res.witness, tree, true);
    EXPECT_GT(bad.max_residual, 1e-3);
}

TEST(Steinberg, Ramified) {
    for (int delta : {1, 2}) {
        auto rep = steinberg_case(FieldParams::make(3, delta), TreeCase::Ramified, 0, 3);
        EXPECT_EQ(rep.verdict, kNotDistinguished);
        for (auto [R, n] : rep.nullity_by_R) EXPECT_EQ(n, 0);
    }
}

TEST(Steinberg, UnramifiedSignRow) {
    for (int tdeg : {4, 10}) {
        auto rep = steinberg_case(FieldParams::make(3, 2), TreeCase::Unramified, tdeg, 3);
        EXPECT_EQ(rep.verdict, kNotDistinguished);
        EXPECT_EQ(rep.nullity_without_sign, 1);
        auto tree = build_tree(tdeg - 1, 2, TreeCase::Unramified);
        auto sys = assemble_unramified_steinberg(tree, true);
        EXPECT_EQ(sys.block_count(RowTag::Sign), 1);
    }
    EXPECT_THROW(steinberg_case(FieldParams::make(3, 2), TreeCase::Unramified, 2, 1), ConfigError);
}

TEST(Oracle, MatchesSolve) {
    struct C { int delta, f; };
    for (C c : {C{1, 1}, C{2, 1}, C{2, 2}})
        for (const auto& p : pairs_of(3, c.delta, c.f))
            for (int R : {0, 1}) {
                int expected = 0;
                if (p.central.is_trivial()) {
                    AssembleOptions opt;
                    opt.depth_limit = R;
                    expected = solve(assemble(p, build_tree(p.params.Q, 1, TreeCase::Ramified), opt)).nullity;
                }
                EXPECT_EQ(brute_force_oracle(p, R), expected) << c.delta << c.f << " a=" << p.chi_f.residue.a;
            }
}

TEST(Oracle, DroppedEquivarianceGrowsKernel) {
    auto pair = central_trivial(3, 1, 1);
    EXPECT_EQ(brute_force_oracle(pair, 1), 0);
    EXPECT_GT(brute_force_oracle(pair, 1, {true}), 0);
}
