#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <random>

#include "distlab/acceptance.hpp"
#include "distlab/jl.hpp"

using namespace distlab;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct RunConfig {
    i64 p = 0;
    i64 q = 0;
    int delta = 0;
    int f = 0;
    i64 chi_exp = -1;
    std::string unif = "0";
    int R = 3;
    bool steinberg = false;
    std::string tree_case = "ramified";
    int tdeg = 0;
    bool scan = false;
    bool oracle = false;
    bool timing = false;
    std::string out;
    std::uint32_t seed = 1;
    bool verify_all = false;
};

Angle parse_angle(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Angle(std::stoll(s), 1);
        return Angle(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw ConfigError("--unif expects a rational angle a/b, got '" + s + "'");
    }
}

std::string angle_str(const Angle& a) {
    return a.den == 1 ? std::to_string(a.num) : std::to_string(a.num) + "/" + std::to_string(a.den);
}

json char_json(const MulCharacter& c) { return {{"order_of_group", c.n}, {"exponent", c.a}}; }

struct Checks {
    json list = json::array();
    bool all_pass = true;

    void add(const std::string& anchor, bool pass, const std::string& detail) {
        list.push_back({{"anchor", anchor}, {"pass", pass}, {"detail", detail}});
        all_pass = all_pass && pass;
    }
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

FieldParams field_params(const RunConfig& cfg) {
    if (cfg.q <= 0 || cfg.delta <= 0) throw ConfigError("--q and --delta are required");
    auto P = FieldParams::make(cfg.q, cfg.delta);
    if (cfg.p && cfg.p != P.p) throw ConfigError("--p does not match --q");
    if (P.p == 2) throw ConfigError("q must be odd");
    return P;
}

void pair_checks(const PairData& pair, const DistinctionReport& rep, const RunConfig& cfg, Checks& ch) {
    Gl2Fq G(pair.params.Q);
    NonsplitTorus T(G);
    auto H = T.elements();
    const i64 q = pair.params.q;

    bool dims_ok = true;
    int invariants = 0;
    for (const auto& c : decompose_Vs(pair)) {
        InvariantDim d;
        int expect;
        if (c.kind == ComponentKind::Steinberg) {
            SteinbergModel St(G, c.chi1);
            d = invariant_dim(St, H, [&](const Gl2Element& t) { return norm_twist(G, c.chi1, t, q); });
            expect = is_trivial_on_subfield(c.chi1, q) ? 0 : 1;
        } else {
            d = invariant_dim(InducedModel(G, c.chi1, c.chi2), H);
            expect = (c.chi1 * c.chi2).is_trivial() ? 1 : 0;
        }
        dims_ok = dims_ok && d.by_rank == d.by_character && d.by_rank == expect;
        invariants += d.by_rank;
    }
    ch.add("hom-dim-s0", dims_ok, "rank and character sum agree; total " + std::to_string(invariants));

    auto hs = triviality_forces_halfshift(pair.chi0, pair.f, q);
    ch.add("half-shift-law", hs.law_holds, "trivial products: " + std::to_string(hs.trivial_pairs.size()));

    if (pair.f % 2 == 0) {
        const int h = pair.f / 2;
        InducedModel U(G, pair.chi0_twist(0), pair.chi0_twist(h));
        auto J = build_J(G, U, pair);
        Vec f0 = whittaker_vector(G, U);
        Mat I = Mat::Identity(U.dim(), U.dim());
        Mat Je = I;
        for (int i = 0; i < J.e; ++i) Je = Je * J.J;
        const auto& F = G.field();
        std::vector<Gl2Element> gens = {G.diag(F.generator(), 1), G.diag(1, F.generator()), G.upper_unipotent(1),
                                        G.upper_unipotent(F.generator()), G.w()};
        std::mt19937 rng(cfg.seed);
        auto pick = [&]() { return F.exp(static_cast<i64>(rng() % static_cast<std::uint32_t>(F.order() - 1))); };
        for (int i = 0; i < 20; ++i) {
            Gl2Element g{pick(), static_cast<i64>(rng() % F.order()), static_cast<i64>(rng() % F.order()), pick()};
            if (G.det(g) != 0) gens.push_back(g);
        }
        double worst = 0;
        for (const auto& g : gens)
            worst = std::max(worst, (J.J * U.matrix(g) - U.matrix(G.frobenius(g, J.psi_power)) * J.J).norm());
        double res = std::max({(J.J * f0 - f0).norm(), (Je - I).norm(), worst});
        ch.add("J-operator", res < 1e-9, "max residual " + sci(res) + " on " + std::to_string(gens.size()) + " elements");

        if ((pair.chi0_twist(0) * pair.chi0_twist(h)).is_trivial()) {
            auto s = s1_s2_vanishing(G, pair);
            ch.add("s1-s2-vanishing", s.s1_zero && s.s2_zero,
                   "|S1| = " + sci(std::abs(s.s1)) + ", |S2| = " + sci(std::abs(s.s2)));
        }
        int n1 = rep.nullity_by_R.front().second;
        ch.add("f-even-hard-zero", n1 == 0, "nullity " + std::to_string(n1) + " at R=1");
    }

    int worst_null = 0;
    for (auto [R, n] : rep.nullity_by_R) worst_null = std::max(worst_null, n);
    ch.add("multiplicity-bound", worst_null <= 1, "max nullity " + std::to_string(worst_null));
    ch.add("nullity-monotone", rep.monotone, "non-increasing in R");
    ch.add("induced-block-vanishing", rep.induced_residual < 1e-9, "max induced part " + sci(rep.induced_residual));
    if (rep.propagation)
        ch.add("propagation-formula", rep.propagation->max_residual < 1e-8 && rep.propagation->s0_kernel_residual < 1e-8,
               "max residual " + sci(std::max(rep.propagation->max_residual, rep.propagation->s0_kernel_residual)));

    if (cfg.oracle) {
        if (pair.params.Q > 9) throw ConfigError("--oracle needs Q <= 9");
        bool ok = true;
        std::string detail;
        for (int R : {0, 1}) {
            int expected = 0;
            if (pair.central.is_trivial()) {
                AssembleOptions opt;
                opt.depth_limit = R;
                expected = solve(assemble(pair, build_tree(pair.params.Q, 1, TreeCase::Ramified), opt)).nullity;
            }
            int got = brute_force_oracle(pair, R);
            ok = ok && got == expected;
            detail += (R ? ", " : "") + std::string("R=") + std::to_string(R) + " oracle " + std::to_string(got) +
                      " solve " + std::to_string(expected);
        }
        ch.add("oracle-equivalence", ok, detail);
    }
}

json pair_report(const RunConfig& cfg, int& exit_code) {
    auto t0 = std::chrono::steady_clock::now();
    auto P = field_params(cfg);
    if (cfg.f <= 0) throw ConfigError("--f is required");
    if (cfg.chi_exp < 0) throw ConfigError("--chi-exp is required");
    const i64 n = ipow(cfg.q, cfg.f) - 1;
    TameCharacter chi_f{MulCharacter(n, cfg.chi_exp), parse_angle(cfg.unif)};
    PairData pair = build_pair_data(P, cfg.f, chi_f);

    auto jl = jl_agreement_report(pair, cfg.R);
    const auto& rep = jl.d_report;
    Checks ch;
    ch.add("central-character", true,
           pair.central.is_trivial() ? "trivial on k^x" : "nontrivial on k^x: obstruction, not distinguished");
    pair_checks(pair, rep, cfg, ch);
    ch.add("kable-exclusion", jl.kable, "GL_f criterion for zeta chi_f and eta criterion not both true");
    if (jl.flag == AgreementFlag::AgreementProven)
        ch.add("jl-agreement", jl.d_side == jl.split_side, "D-side " + jl.d_side + ", split side " + jl.split_side);

    json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = {{"p", P.p}, {"q", P.q}, {"delta", P.delta}, {"Q", P.Q}, {"d", P.d}, {"f", pair.f},
                   {"e", pair.e}, {"R", cfg.R}, {"case", "ramified"}};
    j["characters"] = {{"chi_f", {{"residue", char_json(pair.chi_f.residue)}, {"unif", angle_str(pair.chi_f.unif)}}},
                       {"chibar", char_json(pair.chibar)},
                       {"chi0", char_json(pair.chi0)},
                       {"central", char_json(pair.central)},
                       {"zeta", angle_str(zeta_constant(pair))}};
    j["checks"] = ch.list;
    json nulls = json::array();
    for (auto [R, k] : rep.nullity_by_R) nulls.push_back({{"R", R}, {"nullity", k}});
    j["solver"] = {{"R", cfg.R}, {"nullity", rep.nullity_by_R.back().second}, {"by_radius", nulls}};
    j["verdict"] = rep.verdict;
    j["jl"] = {{"d_side", jl.d_side}, {"split_side", jl.split_side}, {"flag", to_string(jl.flag)},
                 {"agree", jl.d_side == jl.split_side}};
    if (cfg.timing)
        j["timing"] = {{"solver_s", rep.seconds},
                       {"total_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    else
        j["timing"] = nullptr;
    if (!ch.all_pass) exit_code = 1;
    return j;
}

json steinberg_report(const RunConfig& cfg, int& exit_code) {
    auto t0 = std::chrono::steady_clock::now();
    RunConfig c = cfg;
    if (c.q == 0) c.q = 3;
    if (c.delta == 0) c.delta = 1;
    auto P = field_params(c);
    TreeCase tc;
    if (c.tree_case == "ramified") tc = TreeCase::Ramified;
    else if (c.tree_case == "unramified") tc = TreeCase::Unramified;
    else throw ConfigError("--case must be ramified or unramified");
    if (tc == TreeCase::Unramified && c.tdeg < 3) throw ConfigError("--case unramified needs --tdeg >= 3");

    auto jl = jl_steinberg_report(P, tc, c.tdeg, c.R);
    const auto& rep = jl.d_report;
    Checks ch;
    ch.add("steinberg-not-distinguished", rep.verdict == kNotDistinguished,
           "nullity " + std::to_string(rep.nullity_by_R.back().second) + " at R=" + std::to_string(c.R));
    ch.add("nullity-monotone", rep.monotone, "non-increasing in R");
    if (tc == TreeCase::Unramified)
        ch.add("sign-row", rep.nullity_without_sign > 0 && rep.verdict == kNotDistinguished,
               "nullity " + std::to_string(rep.nullity_without_sign) + " without the row 2 phi(v) = 0, 0 with it");
    ch.add("kable-exclusion", jl.kable, "trivial pair");

    json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = {{"p", P.p}, {"q", P.q}, {"delta", P.delta}, {"Q", P.Q}, {"f", 1}, {"R", c.R},
                   {"case", c.tree_case}};
    if (tc == TreeCase::Unramified) j["params"]["tdeg"] = c.tdeg;
    j["characters"] = {{"chi_f", {{"residue", char_json(MulCharacter(P.q - 1, 0))}, {"unif", "0"}}}};
    j["checks"] = ch.list;
    json nulls = json::array();
    for (auto [R, k] : rep.nullity_by_R) nulls.push_back({{"R", R}, {"nullity", k}});
    j["solver"] = {{"R", c.R}, {"nullity", rep.nullity_by_R.back().second}, {"by_radius", nulls}};
    j["verdict"] = rep.verdict;
    j["jl"] = {{"d_side", jl.d_side}, {"split_side", jl.split_side}, {"flag", to_string(jl.flag)},
                 {"agree", jl.d_side == jl.split_side}};
    if (cfg.timing)
        j["timing"] = {{"total_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    else
        j["timing"] = nullptr;
    if (!ch.all_pass) exit_code = 1;
    return j;
}

json scan_report(const RunConfig& cfg, int& exit_code) {
    auto t0 = std::chrono::steady_clock::now();
    auto P = field_params(cfg);
    Angle unif = parse_angle(cfg.unif);
    std::vector<PairData> pairs;
    for (int f = 1; f <= P.delta; ++f) {
        if (cfg.f && f != cfg.f) continue;
        auto part = admissible_pairs(P, f, unif);
        pairs.insert(pairs.end(), part.begin(), part.end());
    }
    if (cfg.f && (P.delta % cfg.f != 0)) pairs.clear();

    std::vector<std::future<json>> jobs;
    for (const auto& pair : pairs)
        jobs.push_back(std::async(std::launch::async, [&cfg, pair]() {
            auto jl = jl_agreement_report(pair, cfg.R);
            const auto& rep = jl.d_report;
            json nulls = json::array();
            for (auto [R, k] : rep.nullity_by_R) nulls.push_back(k);
            bool mult = true;
            for (auto [R, k] : rep.nullity_by_R) mult = mult && k <= 1;
            return json{{"f", pair.f},
                        {"chi_exp", pair.chi_f.residue.a},
                        {"chi0_exp", pair.chi0.a},
                        {"central_trivial", pair.central.is_trivial()},
                        {"nullity_by_R", nulls},
                        {"verdict", rep.verdict},
                        {"split_side", jl.split_side},
                        {"flag", to_string(jl.flag)},
                        {"agree", jl.d_side == jl.split_side},
                        {"checks_pass", mult && rep.monotone && jl.kable}};
        }));
    json rows = json::array();
    bool ok = true;
    for (auto& job : jobs) {
        json r = job.get();
        ok = ok && r["checks_pass"].get<bool>();
        rows.push_back(std::move(r));
    }
    if (rows.empty()) rows.push_back({{"row", "no admissible pairs"}});

    json j;
    j["schema_version"] = kSchemaVersion;
    j["params"] = {{"p", P.p}, {"q", P.q}, {"delta", P.delta}, {"Q", P.Q}, {"R", cfg.R}, {"unif", angle_str(unif)}};
    if (cfg.f) j["params"]["f"] = cfg.f;
    j["characters"] = {{"dedup", "Frobenius orbit, smallest exponent"}, {"count", pairs.size()}};
    j["checks"] = json::array({{{"anchor", "scan-rows"}, {"pass", ok}, {"detail", "multiplicity, monotonicity, Kable per row"}}});
    j["solver"] = {{"R", cfg.R}};
    j["rows"] = rows;
    j["verdict"] = pairs.empty() ? "no admissible pairs" : "see rows";
    if (cfg.timing)
        j["timing"] = {{"total_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    else
        j["timing"] = nullptr;
    if (!ok) exit_code = 1;
    return j;
}

int verify_all(const RunConfig& cfg) {
    SuiteOptions opt;
    opt.seed = cfg.seed;
    int failed = 0;
    for (int id = 1; id <= kCriterionCount; ++id) {
        auto r = run_criterion(id, opt);
        std::cout << format_line(r) << std::endl;
        failed += !r.pass;
    }
    std::cout << (kCriterionCount - failed) << "/" << kCriterionCount << " criteria pass" << std::endl;
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Distinction checks for level-zero non-cuspidal discrete series of GL2 over a division algebra"};
    app.add_option("--p", cfg.p, "residue characteristic (checked against q)");
    app.add_option("--q", cfg.q, "residue field order of F");
    app.add_option("--delta", cfg.delta, "reduced degree of the division algebra");
    app.add_option("--f", cfg.f, "degree of K_f over K");
    app.add_option("--chi-exp", cfg.chi_exp, "residue exponent of chi_f on F_{q^f}^x");
    app.add_option("--unif", cfg.unif, "chi_f at the uniformizer, as a fraction of a turn (a/b)");
    app.add_option("--R", cfg.R, "truncation radius")->check(CLI::Range(1, 6));
    app.add_flag("--steinberg", cfg.steinberg, "run the Steinberg case");
    app.add_option("--case", cfg.tree_case, "ramified or unramified (Steinberg)");
    app.add_option("--tdeg", cfg.tdeg, "tree degree for the unramified Steinberg case");
    app.add_flag("--scan", cfg.scan, "scan admissible pairs up to Frobenius orbit");
    app.add_flag("--oracle", cfg.oracle, "cross-check against the brute-force oracle (Q <= 9)");
    app.add_flag("--timing", cfg.timing, "record wall-clock times in the report");
    app.add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    app.add_option("--spot-check-seed", cfg.seed, "seed for sampled matrix identities");
    app.add_flag("--verify-all", cfg.verify_all, "run the acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (cfg.verify_all) return verify_all(cfg);

    int exit_code = 0;
    json report;
    try {
        if (cfg.steinberg) report = steinberg_report(cfg, exit_code);
        else if (cfg.scan) report = scan_report(cfg, exit_code);
        else report = pair_report(cfg, exit_code);
    } catch (const Error& e) {
        if (dynamic_cast<const InvariantViolation*>(&e) || dynamic_cast<const IntegralityViolation*>(&e) ||
            dynamic_cast<const NormalizationFailure*>(&e)) {
            std::cerr << "invariant violation: " << e.what() << "\n";
            return 1;
        }
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(cfg.out);
        if (!os) {
            std::cerr << "config error: cannot write " << cfg.out << "\n";
            return 2;
        }
        os << text;
    }
    return exit_code;
}
