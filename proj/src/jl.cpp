#include "distlab/jl.hpp"

#include <numeric>

namespace distlab {

TameCharacter zeta_twist(const TameCharacter& chi) { return TameCharacter{chi.residue, chi.unif + Angle(1, 2)}; }

SplitSideParam split_side_param(const PairData& pair) {
    SplitSideParam s;
    s.n = 2 * pair.params.delta;
    s.f = pair.f;
    s.r = s.n / s.f;
    s.theta = zeta_twist(pair.chi_f);
    return s;
}

EtaData eta_data(i64 q) {
    if (q % 2 == 0) throw ConfigError("eta_data: q must be odd");
    EtaData e;
    e.q = q;
    bool minus = ((q - 1) / 2) % 2 == 1;
    e.eta_minus_one = minus ? Angle(1, 2) : Angle();
    e.alpha = minus ? Angle(1, 4) : Angle();
    return e;
}

TameCharacter eta_twist(const TameCharacter& chi_f, int f, const EtaData& eta) {
    const i64 n = chi_f.residue.n;
    if (n != ipow(eta.q, f) - 1) throw ConfigError("eta_twist: residue character is not on k_f");
    // eta o N on k_f^x is the quadratic character of k_f^x
    MulCharacter res(n, chi_f.residue.a + n / 2);
    return TameCharacter{res, chi_f.unif + Angle(1, 2) + eta.alpha.times(f)};
}

std::vector<i64> delta_element_logs(i64 q, int f) {
    std::vector<i64> out;
    if (f % 2 != 0) return out;
    const i64 n = ipow(q, f) - 1;
    const i64 h1 = ipow(q, f / 2) + 1;  // k_{f/2}^x = <g^h1>
    for (i64 j = h1 / 2; j < n; j += h1 / 2)
        if (j % h1 != 0) out.push_back(j);
    return out;
}

GlfClauses glf_clauses(const TameCharacter& theta, int f, i64 q) {
    GlfClauses c;
    const auto& res = theta.residue;
    if (res.n != ipow(q, f) - 1) throw ConfigError("glf_clauses: residue character is not on k_f");
    c.f_even = f % 2 == 0;
    c.trivial_on_F = is_trivial_on_subfield(res, q) && theta.unif.times(2).is_zero();
    if (!c.f_even) return c;
    c.trivial_on_half = is_trivial_on_subfield(res, ipow(q, f / 2));
    auto logs = delta_element_logs(q, f);
    auto sign_at = [&](i64 j) { return theta.unif + res.at_log(j) == Angle(1, 2); };
    c.sign_clause = sign_at(logs.front());
    if (c.trivial_on_half)
        for (i64 j : logs) c.d_independent = c.d_independent && sign_at(j) == c.sign_clause;
    c.value = c.trivial_on_F && c.trivial_on_half && c.sign_clause;
    return c;
}

bool glf_distinction_criterion(const TameCharacter& theta, int f, i64 q) { return glf_clauses(theta, f, q).value; }

bool eta_distinction_criterion(const TameCharacter& chi_f, int f, const EtaData& eta) {
    return glf_distinction_criterion(eta_twist(chi_f, f, eta), f, eta.q);
}

bool eta_distinction_criterion(const PairData& pair, const EtaData& eta) {
    return eta_distinction_criterion(pair.chi_f, pair.f, eta);
}

bool kable_exclusion_check(const TameCharacter& chi_f, int f, const EtaData& eta) {
    return !(glf_distinction_criterion(zeta_twist(chi_f), f, eta.q) && eta_distinction_criterion(chi_f, f, eta));
}

bool kable_exclusion_check(const PairData& pair, const EtaData& eta) {
    return kable_exclusion_check(pair.chi_f, pair.f, eta);
}

std::string to_string(AgreementFlag flag) {
    switch (flag) {
        case AgreementFlag::AgreementProven: return "AGREEMENT_PROVEN";
        case AgreementFlag::Open: return "OPEN";
        case AgreementFlag::NoClaim: return "NO_CLAIM";
    }
    return "?";
}

namespace {

JlReport split_side(const TameCharacter& chi_f, int f, i64 q) {
    JlReport r;
    auto eta = eta_data(q);
    r.glf_zeta_chi = glf_distinction_criterion(zeta_twist(chi_f), f, q);
    r.eta_distinguished = eta_distinction_criterion(chi_f, f, eta);
    r.kable = !(r.glf_zeta_chi && r.eta_distinguished);
    r.split_side = r.eta_distinguished ? "distinguished" : kNotDistinguished;
    return r;
}

}  // namespace

JlReport jl_agreement_report(const PairData& pair, int R) {
    JlReport r = split_side(pair.chi_f, pair.f, pair.params.q);
    r.d_report = run_distinction(pair, R);
    r.d_side = r.d_report.verdict;
    auto on_k = restrict_to_subfield(pair.chi0, pair.params.q);
    if (pair.f % 2 == 0 || on_k.is_trivial()) r.flag = AgreementFlag::AgreementProven;
    else if (mod(2 * on_k.a, on_k.n) == 0) r.flag = AgreementFlag::Open;
    else r.flag = AgreementFlag::NoClaim;
    return r;
}

JlReport jl_steinberg_report(const FieldParams& params, TreeCase tree_case, int tdeg, int R) {
    JlReport r = split_side(TameCharacter{MulCharacter(params.q - 1, 0), Angle()}, 1, params.q);
    r.d_report = steinberg_case(params, tree_case, tdeg, R);
    r.d_side = r.d_report.verdict;
    r.flag = AgreementFlag::AgreementProven;
    return r;
}

JlParameter jl_transfer(const JlParameter& d_side) { return d_side; }
JlParameter jl_inverse(const JlParameter& split_side) { return split_side; }

int correction_exponent(int m, int a) { return m - std::gcd(a, m); }

}  // namespace distlab
