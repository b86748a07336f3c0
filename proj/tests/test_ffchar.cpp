#include <gtest/gtest.h>

#include "distlab/ffchar.hpp"

using namespace distlab;

namespace {

// Orbit of a under multiplication by q, computed by listing every multiple.
i64 orbit_by_listing(i64 a, i64 q, i64 n) {
    std::vector<i64> seen;
    i64 x = mod(a, n);
    while (std::find(seen.begin(), seen.end(), x) == seen.end()) {
        seen.push_back(x);
        x = mod(x * q, n);
    }
    return static_cast<i64>(seen.size());
}

}  // namespace

TEST(FiniteField, AxiomsExhaustiveSmallOrders) {
    for (i64 order : {3, 5, 7, 9, 25, 27, 81}) {
        FiniteField F = FiniteField::of_order(order);
        i64 g = F.generator();
        EXPECT_EQ(F.pow(g, order - 1), 1);
        for (i64 r : prime_factors(order - 1)) EXPECT_NE(F.pow(g, (order - 1) / r), 1);
        for (i64 x = 1; x < order; ++x) {
            EXPECT_EQ(F.exp(F.log(x)), x);
            EXPECT_EQ(F.mul(x, F.inv(x)), 1);
        }
        for (i64 a = 0; a < order; ++a)
            for (i64 b = 0; b < order; ++b) {
                EXPECT_EQ(F.add(a, b), F.add(b, a));
                EXPECT_EQ(F.sub(F.add(a, b), b), a);
                for (i64 c = 0; c < order; c += 1 + order / 9)
                    EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
            }
    }
}

TEST(FiniteField, DeterministicModulus) {
    EXPECT_EQ(FiniteField::of_order(9).modulus_string(), "x^2 + 1");
    EXPECT_EQ(FiniteField::of_order(27).modulus_string(), "x^3 + 2x + 1");
    EXPECT_EQ(FiniteField::of_order(3).generator(), 2);
}

TEST(FiniteField, TraceIsAdditiveAndOnto) {
    FiniteField F = FiniteField::of_order(27);
    std::vector<int> count(3, 0);
    for (i64 x = 0; x < 27; ++x) ++count[F.abs_trace(x)];
    EXPECT_EQ(count, (std::vector<int>{9, 9, 9}));
}

TEST(FrobeniusOrbit, Examples) {
    EXPECT_EQ(frobenius_orbit_length(MulCharacter(80, 0), 3), 1);
    EXPECT_EQ(frobenius_orbit_length(MulCharacter(80, 20), 3), 2);
    EXPECT_EQ(frobenius_orbit_length(MulCharacter(26, 1), 3), 3);
    for (i64 a = 0; a < 80; ++a) {
        i64 f = frobenius_orbit_length(MulCharacter(80, a), 3);
        EXPECT_EQ(f, orbit_by_listing(a, 3, 80));
        EXPECT_EQ(4 % f, 0);
    }
}

TEST(NormDescend, BruteForceAgainstNormMap) {
    FiniteField F = FiniteField::of_order(81);
    FiniteField k = FiniteField::of_order(9);
    (void)k;
    const i64 Q = 9;
    for (i64 a = 0; a < 80; ++a) {
        MulCharacter chibar(80, a);
        // exhaustive search for b with chi0(N x) = chibar(x) for every unit x
        std::vector<i64> sols;
        for (i64 b = 0; b < 8; ++b) {
            bool ok = true;
            for (i64 x = 1; x < 81 && ok; ++x) {
                i64 nx = F.pow(x, Q + 1);
                // F_9 inside F_81 is generated by g^10
                i64 lg = F.log(nx) / 10;
                ok = Angle(b * lg, 8) == chibar.at_log(F.log(x));
            }
            if (ok) sols.push_back(b);
        }
        if (sols.empty()) {
            EXPECT_THROW(norm_descend(chibar, Q), NoDescent) << a;
        } else {
            ASSERT_EQ(sols.size(), 1u);
            EXPECT_EQ(norm_descend(chibar, Q).a, sols[0]);
            EXPECT_EQ(inflate_along_norm(norm_descend(chibar, Q), 81), chibar);
        }
    }
    EXPECT_EQ(norm_descend(MulCharacter(80, 20), 9), MulCharacter(8, 2));
    EXPECT_THROW(norm_descend(MulCharacter(80, 1), 9), NoDescent);
}

TEST(Subfields, TrivialityExamples) {
    EXPECT_FALSE(is_trivial_on_subfield(MulCharacter(26, 1), 3));
    EXPECT_TRUE(is_trivial_on_subfield(MulCharacter(8, 2), 3));
    EXPECT_TRUE(is_trivial_on_subfield(MulCharacter(26, 0), 27));
    EXPECT_TRUE(is_trivial_on_squares(MulCharacter(26, 1), 3));
    EXPECT_THROW(is_trivial_on_subfield(MulCharacter(26, 1), 9), NotASubfield);
    EXPECT_THROW(is_trivial_on_subfield(MulCharacter(8, 1), 5), NotASubfield);

    // F_25, exponent 12, against the two square classes of F_5^x
    FiniteField F = FiniteField::of_order(25);
    bool trivial = true;
    for (i64 x = 1; x < 25; ++x) {
        if (!F.in_subfield(x, 5)) continue;
        i64 sq = F.mul(x, x);
        trivial = trivial && MulCharacter(24, 12).at_log(F.log(sq)).is_zero();
    }
    EXPECT_EQ(is_trivial_on_squares(MulCharacter(24, 12), 5), trivial);
    EXPECT_TRUE(trivial);
}

TEST(PairData, Examples) {
    auto fp = FieldParams::make(3, 2);
    auto pd = build_pair_data(fp, 2, {MulCharacter(8, 1), Angle()});
    EXPECT_EQ(pd.chibar, MulCharacter(80, 10));
    EXPECT_EQ(pd.chi0, MulCharacter(8, 1));
    EXPECT_EQ(pd.e, 2);

    auto pd3 = build_pair_data(FieldParams::make(3, 3), 3, {MulCharacter(26, 1), Angle()});
    EXPECT_EQ(pd3.e, 2);
    EXPECT_EQ(pd3.e_prime, 2);

    EXPECT_THROW(build_pair_data(fp, 4, {MulCharacter(80, 1), Angle()}), NotNonCuspidal);
    EXPECT_THROW(build_pair_data(fp, 2, {MulCharacter(8, 4), Angle()}), NotRegular);
    EXPECT_THROW(FieldParams::make(4, 1), ConfigError);
}

TEST(PairData, Chi0OrbitMatchesChibarOrbit) {
    for (i64 q : {3, 5})
        for (int delta : {1, 2, 3}) {
            auto fp = FieldParams::make(q, delta);
            if (fp.Q > 27) continue;
            i64 n = fp.Q * fp.Q - 1;
            for (i64 a = 0; a < n; ++a) {
                MulCharacter chibar(n, a);
                if (a % (fp.Q + 1)) continue;
                auto chi0 = norm_descend(chibar, fp.Q);
                EXPECT_EQ(frobenius_orbit_length(chibar, q), frobenius_orbit_length(chi0, q));
                EXPECT_EQ(inflate_along_norm(chi0, fp.Q * fp.Q), chibar);
            }
        }
}

TEST(Cyclotomic, ExactSums) {
    CyclotomicSum s(8);
    for (int k = 0; k < 8; ++k) s.add(k);
    EXPECT_TRUE(s.is_zero());
    CyclotomicSum t(12);
    t.add(Angle(1, 3));
    t.add(Angle(2, 3));
    i64 v = 0;
    ASSERT_TRUE(t.is_integer(&v));
    EXPECT_EQ(v, -1);
    CyclotomicSum u(4);
    u.add(1);
    EXPECT_FALSE(u.is_integer(nullptr));
}

TEST(Admissible, OrbitRepresentatives) {
    EXPECT_EQ(regular_orbit_representatives(3, 2), (std::vector<i64>{1, 2, 5}));
    EXPECT_EQ(regular_orbit_representatives(3, 1), (std::vector<i64>{0, 1}));
    // (q^3 - q) / 3 regular characters of F_27^x up to Frobenius
    EXPECT_EQ(regular_orbit_representatives(3, 3).size(), 8u);
    auto P = FieldParams::make(3, 2);
    EXPECT_EQ(admissible_pairs(P, 2, Angle()).size(), 3u);
    EXPECT_EQ(admissible_pairs(P, 1, Angle()).size(), 2u);
    EXPECT_TRUE(admissible_pairs(P, 4, Angle()).empty());
    EXPECT_TRUE(admissible_pairs(FieldParams::make(3, 3), 2, Angle()).empty());
}
