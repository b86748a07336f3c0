#include <gtest/gtest.h>

#include "distlab/jl.hpp"

using namespace distlab;

namespace {

TameCharacter tame(i64 n, i64 a, Angle u = Angle()) { return TameCharacter{MulCharacter(n, a), u}; }

}  // namespace

TEST(Eta, Data) {
    auto e3 = eta_data(3);
    EXPECT_EQ(e3.eta_minus_one, Angle(1, 2));
    EXPECT_EQ(e3.alpha.times(2), e3.eta_minus_one);
    auto e5 = eta_data(5);
    EXPECT_TRUE(e5.eta_minus_one.is_zero());
    EXPECT_TRUE(e5.alpha.is_zero());
    EXPECT_THROW(eta_data(4), ConfigError);
}

TEST(Eta, TwistRestrictsToEtaOnF) {
    // eta^ o N restricted to F^x: Legendre symbol on units, eta(-1) on pi_F = pi_K^2
    for (i64 q : {3, 5, 7})
        for (int f : {1, 2, 3}) {
            auto e = eta_data(q);
            i64 n = ipow(q, f) - 1;
            auto t = eta_twist(tame(n, 0, Angle(1, 2)), f, e);
            auto on_k = restrict_to_subfield(t.residue, q);
            EXPECT_EQ(on_k.a * 2 % on_k.n, 0);
            EXPECT_EQ(mod(on_k.a, on_k.n) != 0, f % 2 == 1);
            EXPECT_EQ(t.unif.times(2), e.alpha.times(2 * f));
        }
}

TEST(DeltaElement, CanonicalAndAll) {
    EXPECT_EQ(delta_element_logs(3, 2), (std::vector<i64>{2, 6}));
    EXPECT_TRUE(delta_element_logs(3, 3).empty());
    const i64 q = 3;
    const int f = 4;
    FiniteField F = FiniteField::of_order(ipow(q, f));
    const i64 half = ipow(q, f / 2);
    auto logs = delta_element_logs(q, f);
    EXPECT_EQ(static_cast<i64>(logs.size()), half - 1);
    for (i64 j : logs) {
        i64 d = F.exp(j);
        EXPECT_FALSE(F.in_subfield(d, half));
        EXPECT_TRUE(F.in_subfield(F.mul(d, d), half));
    }
}

TEST(Glf, FOddIsFalse) {
    for (i64 a = 0; a < 26; ++a)
        for (Angle u : {Angle(), Angle(1, 2)}) EXPECT_FALSE(glf_distinction_criterion(tame(26, a, u), 3, 3));
}

TEST(Glf, FTwoClauses) {
    auto c = glf_clauses(tame(8, 2), 2, 3);
    EXPECT_TRUE(c.trivial_on_F);
    EXPECT_TRUE(c.trivial_on_half);
    EXPECT_TRUE(c.sign_clause);
    EXPECT_TRUE(c.value);
    EXPECT_FALSE(glf_distinction_criterion(tame(8, 2, Angle(1, 2)), 2, 3));
    EXPECT_FALSE(glf_distinction_criterion(tame(8, 1), 2, 3));
    EXPECT_FALSE(glf_distinction_criterion(tame(8, 2, Angle(1, 4)), 2, 3));
}

TEST(Glf, IndependentOfDeltaElement) {
    for (i64 q : {3, 5})
        for (int f : {2, 4}) {
            i64 n = ipow(q, f) - 1;
            if (n > 700) continue;
            for (i64 a = 0; a < n; ++a)
                for (Angle u : {Angle(), Angle(1, 2)}) EXPECT_TRUE(glf_clauses(tame(n, a, u), f, q).d_independent);
        }
}

TEST(Eta, Criterion) {
    auto e = eta_data(3);
    for (i64 a = 0; a < 26; ++a) EXPECT_FALSE(eta_distinction_criterion(tame(26, a), 3, e));
    // nontrivial on F^x through the uniformizer
    for (i64 a = 0; a < 8; ++a) EXPECT_FALSE(eta_distinction_criterion(tame(8, a, Angle(1, 8)), 2, e));
    // q = 3, f = 2: eta twist keeps the sign product, so chi_f(pi_K) = 1 with chi(d) = -1 passes
    EXPECT_TRUE(eta_distinction_criterion(tame(8, 2), 2, e));
    EXPECT_FALSE(eta_distinction_criterion(tame(8, 2, Angle(1, 2)), 2, e));
}

TEST(Kable, ExhaustiveScans) {
    for (i64 q : {3, 5, 9})
        for (int f : {1, 2, 3}) {
            i64 n = ipow(q, f) - 1;
            if (n > 800) continue;
            auto e = eta_data(q);
            for (i64 a = 0; a < n; ++a)
                for (int u = 0; u < 8; ++u) EXPECT_TRUE(kable_exclusion_check(tame(n, a, Angle(u, 8)), f, e));
        }
    EXPECT_TRUE(kable_exclusion_check(tame(2, 0), 1, eta_data(3)));
}

TEST(Agreement, FTwoPair) {
    auto P = FieldParams::make(3, 2);
    auto pair = build_pair_data(P, 2, tame(8, 2, Angle(1, 2)));
    auto r = jl_agreement_report(pair, 2);
    EXPECT_EQ(r.d_side, kNotDistinguished);
    EXPECT_EQ(r.split_side, kNotDistinguished);
    EXPECT_EQ(r.flag, AgreementFlag::AgreementProven);
    EXPECT_TRUE(r.kable);
}

TEST(Agreement, Steinberg) {
    for (int delta : {1, 2}) {
        auto r = jl_steinberg_report(FieldParams::make(3, delta), TreeCase::Ramified, 0, 2);
        EXPECT_EQ(r.d_side, kNotDistinguished);
        EXPECT_EQ(r.split_side, kNotDistinguished);
        EXPECT_EQ(r.flag, AgreementFlag::AgreementProven);
    }
    auto r = jl_steinberg_report(FieldParams::make(3, 2), TreeCase::Unramified, 10, 2);
    EXPECT_EQ(r.d_side, kNotDistinguished);
    EXPECT_EQ(r.split_side, kNotDistinguished);
}

TEST(Agreement, FThreeOpen) {
    auto P = FieldParams::make(3, 3);
    bool found = false;
    for (i64 a = 0; a < 26 && !found; ++a) {
        PairData pair;
        try {
            pair = build_pair_data(P, 3, tame(26, a));
        } catch (const Error&) {
            continue;
        }
        if (pair.chi0.a != 1) continue;
        found = true;
        auto r = jl_agreement_report(pair, 2);
        EXPECT_EQ(r.d_side, kCandidate);
        EXPECT_EQ(r.split_side, kNotDistinguished);
        EXPECT_EQ(r.flag, AgreementFlag::Open);
    }
    EXPECT_TRUE(found);
}

TEST(Transfer, RoundTripAndCorrection) {
    for (i64 a = 0; a < 8; ++a) {
        JlParameter p{2, tame(8, a, Angle(a, 8))};
        auto back = jl_inverse(jl_transfer(p));
        EXPECT_EQ(back.f, p.f);
        EXPECT_EQ(back.chi_f.residue, p.chi_f.residue);
        EXPECT_EQ(back.chi_f.unif, p.chi_f.unif);
    }
    EXPECT_EQ(correction_exponent(2, 2), 0);
    EXPECT_EQ(correction_exponent(2, 4), 0);
    EXPECT_EQ(correction_exponent(2, 1), 1);
    EXPECT_EQ(correction_exponent(2, 3), 1);
}

TEST(SplitSide, Param) {
    auto pair = build_pair_data(FieldParams::make(3, 2), 2, tame(8, 2));
    auto s = split_side_param(pair);
    EXPECT_EQ(s.n, 4);
    EXPECT_EQ(s.r, 2);
    EXPECT_EQ(s.theta.residue, pair.chi_f.residue);
    EXPECT_EQ(s.theta.unif, Angle(1, 2));
}
