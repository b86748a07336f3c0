#pragma once

// Parameter bookkeeping for the Jacquet-Langlands transfer to GL_n(K) and
// the split-side distinction criteria, all kept at the level of characters.

#include <string>
#include <vector>

#include "distlab/distinction.hpp"

namespace distlab {

struct SplitSideParam {
    int n = 0;  // 2 delta
    int r = 0;  // n / f
    int f = 0;
    TameCharacter theta;  // zeta chi_f
};

// zeta: unramified quadratic character, -1 on the uniformizer
TameCharacter zeta_twist(const TameCharacter& chi);
SplitSideParam split_side_param(const PairData& pair);

// eta on F^x: Legendre symbol on units, eta(-1) at the uniformizer.
// eta^ on K^x: alpha^i eta(x) on pi_K^i x, with alpha^2 = eta(-1).
struct EtaData {
    i64 q = 0;
    Angle eta_minus_one;  // 0 or 1/2
    Angle alpha;          // 0 or 1/4
};
EtaData eta_data(i64 q);

// zeta chi_f (eta^ o N_{K_f/K})
TameCharacter eta_twist(const TameCharacter& chi_f, int f, const EtaData& eta);

// Logs (to the base of the k_f generator) of all d with d not in k_{f/2}
// and d^2 in k_{f/2}; the canonical choice is the first.
std::vector<i64> delta_element_logs(i64 q, int f);

struct GlfClauses {
    bool f_even = false;
    bool trivial_on_F = false;
    bool trivial_on_half = false;
    bool sign_clause = false;  // theta(pi_K) theta(d) = -1 at the canonical d
    bool d_independent = true;
    bool value = false;
};
GlfClauses glf_clauses(const TameCharacter& theta, int f, i64 q);
bool glf_distinction_criterion(const TameCharacter& theta, int f, i64 q);

bool eta_distinction_criterion(const TameCharacter& chi_f, int f, const EtaData& eta);
bool eta_distinction_criterion(const PairData& pair, const EtaData& eta);

// not (glf(zeta chi_f) and eta-criterion)
bool kable_exclusion_check(const TameCharacter& chi_f, int f, const EtaData& eta);
bool kable_exclusion_check(const PairData& pair, const EtaData& eta);

enum class AgreementFlag { AgreementProven, Open, NoClaim };
std::string to_string(AgreementFlag flag);

struct JlReport {
    std::string d_side;
    std::string split_side;
    AgreementFlag flag = AgreementFlag::NoClaim;
    bool kable = true;
    bool glf_zeta_chi = false;
    bool eta_distinguished = false;
    DistinctionReport d_report;
};

JlReport jl_agreement_report(const PairData& pair, int R);
JlReport jl_steinberg_report(const FieldParams& params, TreeCase tree_case, int tdeg, int R);

// The transfer fixes the admissible pair.
struct JlParameter {
    int f = 0;
    TameCharacter chi_f;
};
JlParameter jl_transfer(const JlParameter& d_side);
JlParameter jl_inverse(const JlParameter& split_side);

// m - gcd(a, m)
int correction_exponent(int m, int a);

}  // namespace distlab
