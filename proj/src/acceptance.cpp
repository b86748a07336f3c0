#include "distlab/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "distlab/jl.hpp"

namespace distlab {

namespace {

struct Outcome {
    bool pass = true;
    int failures = 0;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (failures == 0) detail.str("");
        if (failures < 3) detail << (failures ? "; " : "") << what;
        ++failures;
        pass = false;
    }
};

std::vector<PairData> all_pairs(i64 q, int delta, int f, const Angle& unif = Angle()) {
    auto P = FieldParams::make(q, delta);
    const i64 n = ipow(q, f) - 1;
    std::vector<PairData> out;
    for (i64 a = 0; a < n; ++a) {
        if (frobenius_orbit_length(MulCharacter(n, a), q) != f) continue;
        out.push_back(build_pair_data(P, f, TameCharacter{MulCharacter(n, a), unif}));
    }
    return out;
}

std::string pair_tag(const PairData& p) {
    std::ostringstream os;
    os << "(" << p.params.q << "," << p.params.delta << "," << p.f << ") a=" << p.chi_f.residue.a;
    const Angle& u = p.chi_f.unif;
    if (!u.is_zero()) os << " u=" << u.num << "/" << u.den;
    return os.str();
}

void c1(Outcome& o, const SuiteOptions&) {
    auto t0 = std::chrono::steady_clock::now();
    for (i64 Q : {3, 5, 9}) {
        auto r = torus_acts_simply_transitively(Q);
        o.require(r.simply_transitive && r.orbit_size == Q + 1 && r.stabilizer_is_center,
                  "Q=" + std::to_string(Q) + " not simply transitive");
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(s < 1.0, "took " + std::to_string(s) + " s");
    if (o.pass) o.detail << "Q in {3,5,9}: orbit Q+1, stabilizer = center";
}

void c2(Outcome& o, const SuiteOptions&) {
    for (auto [Q, q] : {std::pair<i64, i64>{3, 3}, {5, 5}, {9, 3}, {27, 3}}) {
        int r = count_square_norm_cosets(Q, q);
        o.require(r == (Q + 1) / 2, "Q=" + std::to_string(Q) + " r=" + std::to_string(r));
    }
    if (o.pass) o.detail << "r = (Q+1)/2 for Q in {3,5,9,27}";
}

void c3(Outcome& o, const SuiteOptions&) {
    int checked = 0;
    for (int delta : {1, 2, 3}) {
        auto fp = FieldParams::make(3, delta);
        Gl2Fq G(fp.Q);
        NonsplitTorus T(G);
        auto H = T.elements();
        const i64 n = fp.Q - 1;
        for (i64 b = 0; b < n; ++b) {
            MulCharacter chi0(n, b);
            SteinbergModel St(G, chi0);
            auto r = invariant_dim(St, H, [&](const Gl2Element& t) { return norm_twist(G, chi0, t, fp.q); });
            int expect = is_trivial_on_subfield(chi0, fp.q) ? 0 : 1;
            o.require(r.by_rank == r.by_character && r.by_rank == expect,
                      "St Q=" + std::to_string(fp.Q) + " b=" + std::to_string(b));
            ++checked;
        }
        for (i64 a = 0; a < n; ++a)
            for (i64 b = 0; b < n; ++b) {
                if (a == b) continue;
                InducedModel U(G, MulCharacter(n, a), MulCharacter(n, b));
                auto r = invariant_dim(U, H);
                int expect = (a + b) % n == 0 ? 1 : 0;
                o.require(r.by_rank == r.by_character && r.by_rank == expect,
                          "Ind Q=" + std::to_string(fp.Q) + " (" + std::to_string(a) + "," + std::to_string(b) + ")");
                ++checked;
            }
    }
    if (o.pass) o.detail << checked << " characters, rank = character sum = predicted value";
}

void c4(Outcome& o, const SuiteOptions&) {
    int checked = 0;
    for (i64 Q : {3, 9}) {
        Gl2Fq G(Q);
        auto K = mirabolic_elements(G);
        for (i64 a = 0; a < Q - 1; ++a)
            for (i64 b = 0; b < Q - 1; ++b) {
                if (a == b) continue;
                InducedModel U(G, MulCharacter(Q - 1, a), MulCharacter(Q - 1, b));
                cplx s = 0;
                for (const auto& k : K) s += U.matrix(k).trace();
                s /= static_cast<double>(K.size());
                i64 v = inner_product_trivial_on_Ks1(G, U);
                i64 expect = (a + b) % (Q - 1) == 0 ? 2 : 0;
                o.require(v == expect && std::abs(s - cplx(static_cast<double>(v))) < 1e-9,
                          "Q=" + std::to_string(Q) + " (" + std::to_string(a) + "," + std::to_string(b) + ")");
                ++checked;
            }
    }
    if (o.pass) o.detail << checked << " blocks, inner product 2 exactly on trivial products";
}

void c5(Outcome& o, const SuiteOptions&) {
    int checked = 0, trivial = 0;
    for (int delta : {2, 3}) {
        const i64 q = 3, Q = ipow(q, delta), n = Q - 1;
        for (int f = 1; f <= delta; ++f) {
            if (delta % f) continue;
            for (i64 a = 0; a < n; ++a) {
                MulCharacter chi0(n, a);
                if (frobenius_orbit_length(chi0, q) != f) continue;
                auto r = triviality_forces_halfshift(chi0, f, q);
                // direct: chi0^(q^i + q^j) trivial on F_Q^x
                for (int i = 0; i < f; ++i)
                    for (int j = i + 1; j < f; ++j) {
                        bool direct = mod(a * (ipow(q, i) + ipow(q, j)), n) == 0;
                        bool listed = std::find(r.trivial_pairs.begin(), r.trivial_pairs.end(),
                                                std::pair<int, int>{i, j}) != r.trivial_pairs.end();
                        o.require(direct == listed, "listing mismatch Q=" + std::to_string(Q));
                    }
                o.require(r.law_holds, "law fails Q=" + std::to_string(Q) + " a=" + std::to_string(a));
                trivial += static_cast<int>(r.trivial_pairs.size());
                ++checked;
            }
        }
    }
    if (o.pass) o.detail << checked << " characters, " << trivial << " trivial products, all half-shifted";
}

void c6(Outcome& o, const SuiteOptions& opt) {
    Gl2Fq G(9);
    const auto& F = G.field();
    auto all = G.all_elements();
    std::mt19937 rng(opt.seed);
    std::vector<Gl2Element> gens = {G.diag(F.generator(), 1), G.diag(1, F.generator()), G.upper_unipotent(1),
                                    G.upper_unipotent(F.generator()), G.w()};
    int pairs = 0;
    for (const auto& pd : all_pairs(3, 2, 2)) {
        InducedModel U(G, pd.chi0_twist(0), pd.chi0_twist(1));
        auto J = build_J(G, U, pd);
        Vec f0 = whittaker_vector(G, U);
        o.require((J.J * f0 - f0).norm() < 1e-9, pair_tag(pd) + " J f0 != f0");
        Mat Je = Mat::Identity(U.dim(), U.dim());
        for (int i = 0; i < J.e; ++i) Je = Je * J.J;
        o.require((Je - Mat::Identity(U.dim(), U.dim())).norm() < 1e-9, pair_tag(pd) + " J^e != Id");
        auto hs = gens;
        for (int i = 0; i < 100; ++i) hs.push_back(all[rng() % all.size()]);
        double worst = 0;
        for (const auto& h : hs)
            worst = std::max(worst, (J.J * U.matrix(h) - U.matrix(G.frobenius(h, J.psi_power)) * J.J).norm());
        o.require(worst < 1e-9, pair_tag(pd) + " intertwining residual " + std::to_string(worst));
        ++pairs;
    }
    if (o.pass) o.detail << pairs << " pairs, 5 generators + 100 sampled h (seed " << opt.seed << ")";
}

void c7(Outcome& o, const SuiteOptions&) {
    Gl2Fq G(9);
    int s_checked = 0, vacuous = 0;
    for (Angle u : {Angle(), Angle(1, 2)})
        for (const auto& pd : all_pairs(3, 2, 2, u)) {
            if (pd.chi0_twist(0) * pd.chi0_twist(1) == MulCharacter(8, 0)) {
                auto r = s1_s2_vanishing(G, pd);
                o.require(r.s1_zero && r.s2_zero, pair_tag(pd) + " S1/S2 nonzero");
                ++s_checked;
            } else {
                ++vacuous;
            }
            auto rep = run_distinction(pd, 3);
            for (auto [R, n] : rep.nullity_by_R)
                o.require(n == 0, pair_tag(pd) + " nullity " + std::to_string(n) + " at R=" + std::to_string(R));
        }
    if (o.pass) o.detail << "S1 = S2 = 0 on " << s_checked << " pairs (" << vacuous << " without induced invariants); nullity 0 at R=1..3";
}

void c8(Outcome& o, const SuiteOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    const PairData* pick = nullptr;
    auto pairs = all_pairs(3, 3, 3);
    for (const auto& p : pairs)
        if (p.chi0.a == 1) pick = &p;
    if (!pick) {
        o.require(false, "no pair with chi0 exponent 1");
        return;
    }
    auto rep = run_distinction(*pick, 3, opt.inject_sign_error);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(rep.nullity_by_R.back().second == 1, "nullity at R=3 is " + std::to_string(rep.nullity_by_R.back().second));
    if (rep.propagation) {
        o.require(rep.propagation->max_residual < 1e-8,
                  "propagation residual " + std::to_string(rep.propagation->max_residual));
        o.require(rep.propagation->s0_kernel_residual < 1e-8, "s0 kernel residual");
    }
    o.require(s < 60.0, "took " + std::to_string(s) + " s");
    if (o.pass)
        o.detail << "Q=27, R=3: residual " << rep.propagation->max_residual << " over "
                 << rep.propagation->vertices_checked << " vertex blocks, " << s << " s";
}

void c9(Outcome& o, const SuiteOptions&) {
    int pairs = 0;
    for (int delta : {1, 2, 3})
        for (int f = 1; f <= delta; ++f) {
            if (delta % f) continue;
            for (const auto& p : all_pairs(3, delta, f)) {
                auto rep = run_distinction(p, 3);
                for (auto [R, n] : rep.nullity_by_R)
                    o.require(n <= 1, pair_tag(p) + " nullity " + std::to_string(n) + " at R=" + std::to_string(R));
                o.require(rep.monotone, pair_tag(p) + " not monotone");
                ++pairs;
            }
        }
    if (o.pass) o.detail << pairs << " pairs, nullity <= 1 and non-increasing for R <= 3";
}

void c10(Outcome& o, const SuiteOptions&) {
    for (int delta : {1, 2}) {
        auto rep = steinberg_case(FieldParams::make(3, delta), TreeCase::Ramified, 0, 3);
        o.require(rep.verdict == kNotDistinguished, "ramified delta=" + std::to_string(delta));
    }
    for (int tdeg : {4, 10}) {
        auto rep = steinberg_case(FieldParams::make(3, 2), TreeCase::Unramified, tdeg, 3);
        o.require(rep.verdict == kNotDistinguished, "unramified tdeg=" + std::to_string(tdeg));
        o.require(rep.nullity_without_sign > 0,
                  "sign row not exercised at tdeg=" + std::to_string(tdeg));
    }
    if (o.pass) o.detail << "ramified delta in {1,2} and unramified tdeg in {4,10}: nullity 0; sign row removes a 1-dim family";
}

void c11(Outcome& o, const SuiteOptions&) {
    auto eta = eta_data(3);
    int pairs = 0;
    for (int u = 0; u < 2; ++u)
        for (const auto& p : all_pairs(3, 2, 2, Angle(u, 2))) {
            auto r = jl_agreement_report(p, 2);
            std::string tag = pair_tag(p);
            o.require(r.d_side == kNotDistinguished, tag + " D-side " + r.d_side);
            o.require(r.split_side == kNotDistinguished, tag + " split side " + r.split_side);
            ++pairs;
        }
    for (auto tc : {TreeCase::Ramified, TreeCase::Unramified}) {
        auto r = jl_steinberg_report(FieldParams::make(3, 2), tc, 10, 2);
        o.require(r.d_side == kNotDistinguished && r.split_side == kNotDistinguished, "Steinberg");
    }
    int scanned = 0;
    for (int f : {1, 2}) {
        const i64 n = ipow(3, f) - 1;
        for (i64 a = 0; a < n; ++a)
            for (int u = 0; u < 8; ++u) {
                o.require(kable_exclusion_check(TameCharacter{MulCharacter(n, a), Angle(u, 8)}, f, eta), "Kable");
                ++scanned;
            }
    }
    if (o.pass) o.detail << pairs << " f-even pairs and Steinberg agree; Kable holds on " << scanned << " characters";
}

void c12(Outcome& o, const SuiteOptions&) {
    int instances = 0;
    struct C { int delta, f; };
    for (C c : {C{1, 1}, C{2, 1}, C{2, 2}})
        for (const auto& p : all_pairs(3, c.delta, c.f))
            for (int R : {0, 1}) {
                int expected = 0;
                if (p.central.is_trivial()) {
                    AssembleOptions opt;
                    opt.depth_limit = R;
                    expected = solve(assemble(p, build_tree(p.params.Q, 1, TreeCase::Ramified), opt)).nullity;
                }
                int got = brute_force_oracle(p, R);
                o.require(got == expected, pair_tag(p) + " R=" + std::to_string(R) + " oracle " + std::to_string(got) +
                                               " solve " + std::to_string(expected));
                ++instances;
            }
    auto st = all_pairs(3, 1, 1).front();
    o.require(brute_force_oracle(st, 1, {true}) > 0, "oracle blind to dropped equivariance rows");
    if (o.pass) o.detail << instances << " instances match; dropping equivariance rows enlarges the kernel";
}

const std::vector<std::pair<std::string, std::function<void(Outcome&, const SuiteOptions&)>>>& table() {
    static const std::vector<std::pair<std::string, std::function<void(Outcome&, const SuiteOptions&)>>> t = {
        {"simple transitivity", c1},
        {"square-norm count", c2},
        {"hom dimensions at s0", c3},
        {"s1 inner product", c4},
        {"half-shift law", c5},
        {"J-operator identities", c6},
        {"f-even vanishing", c7},
        {"propagation formula", c8},
        {"multiplicity bound", c9},
        {"Steinberg of G", c10},
        {"JL agreement", c11},
        {"oracle equivalence", c12},
    };
    return t;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
    if (id < 1 || id > kCriterionCount) throw ConfigError("criterion id out of range");
    CriterionResult r;
    r.id = id;
    r.name = table()[id - 1].first;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        table()[id - 1].second(o, opt);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    r.pass = o.pass;
    if (o.failures > 3) o.detail << "; ... " << o.failures << " failures";
    r.detail = o.detail.str();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const SuiteOptions& opt) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, opt));
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << "criterion " << (r.id < 10 ? " " : "") << r.id << "  " << (r.pass ? "PASS" : "FAIL") << "  " << r.name
       << ": " << r.detail;
    return os.str();
}

}  // namespace distlab
