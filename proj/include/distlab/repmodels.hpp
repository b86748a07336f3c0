#pragma once

// Matrix models of the components of V_s: twisted Steinberg W^nu and
// induced blocks U^{nu1,nu2}, with Jacquet bases and the intertwiner J.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "distlab/gl2fq.hpp"

namespace distlab {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using TwistFn = std::function<Angle(const Gl2Element&)>;

Angle char_value(const FiniteField& F, const MulCharacter& chi, i64 x);
// chi0(N_{kD/k}(t)) for t in the nonsplit torus
Angle norm_twist(const Gl2Fq& G, const MulCharacter& chi0, const Gl2Element& t, i64 q);

// Functions on P^1 with zero sum. Coordinates are the values at the
// points 1..Q; the value at the base droite 0 is minus their sum.
class SteinbergModel {
public:
    SteinbergModel(const Gl2Fq& G, MulCharacter twist);

    int dim() const { return static_cast<int>(G_->Q()); }
    const MulCharacter& twist() const { return twist_; }
    Angle det_twist(const Gl2Element& g) const { return char_value(G_->field(), twist_, G_->det(g)); }
    Mat matrix(const Gl2Element& g) const { return matrix(g, det_twist(g)); }
    Mat matrix(const Gl2Element& g, const Angle& tau) const;
    int trace_untwisted(const Gl2Element& g) const;  // fixed points - 1
    Vec jacquet(int droite) const;
    Vec from_function(const std::vector<cplx>& h) const;
    std::vector<cplx> to_function(const Vec& v) const;

private:
    const Gl2Fq* G_;
    MulCharacter twist_;
};

// Ind_B^G(chi1 x chi2); basis e_y supported on B r_y with e_y(r_y) = 1.
class InducedModel {
public:
    InducedModel(const Gl2Fq& G, MulCharacter chi1, MulCharacter chi2);

    int dim() const { return static_cast<int>(G_->Q() + 1); }
    const MulCharacter& chi1() const { return chi1_; }
    const MulCharacter& chi2() const { return chi2_; }
    Angle borel_char(const Gl2Element& b) const;
    Mat matrix(const Gl2Element& g) const;
    cplx trace_exact(const Gl2Element& g, CyclotomicSum* acc) const;
    Vec f_B() const;
    Vec f_w() const;
    // {sigma(g_d) f_B, sigma(g_d) f_w}
    std::pair<Vec, Vec> jacquet(int droite) const;
    cplx value_at(const Vec& h, const Gl2Element& g) const;

private:
    const Gl2Fq* G_;
    MulCharacter chi1_, chi2_;
};

enum class ComponentKind { Steinberg, Induced };

struct Component {
    ComponentKind kind;
    int nu1 = 0, nu2 = 0;
    MulCharacter chi1, chi2;  // Steinberg uses chi1 only
    int dim = 0;
    std::string label() const;
};

struct PairData;
std::vector<Component> decompose_Vs(const PairData& pair);
int total_dim(const std::vector<Component>& comps);

struct InvariantDim {
    int by_rank = 0;
    i64 by_character = 0;
};

InvariantDim invariant_dim(const SteinbergModel& m, const std::vector<Gl2Element>& H, const TwistFn& tau);
InvariantDim invariant_dim(const InducedModel& m, const std::vector<Gl2Element>& H);

// 2/(Q-1) * sum_u chi1 chi2(u)
i64 inner_product_trivial_on_Ks1(const Gl2Fq& G, const InducedModel& m);

struct HalfShiftResult {
    std::vector<std::pair<int, int>> trivial_pairs;
    bool law_holds = true;
};
HalfShiftResult triviality_forces_halfshift(const MulCharacter& chi0, int f, i64 q);

Vec whittaker_vector(const Gl2Fq& G, const InducedModel& m);

struct IntertwinerJ {
    Mat J;
    Mat L;         // Ind chi -> Ind chi^w
    cplx F_w;      // kernel value at w after normalization
    Angle zeta;
    int e = 0;
    i64 psi_power = 1;  // psi = entrywise x -> x^psi_power
};

IntertwinerJ build_J(const Gl2Fq& G, const InducedModel& block, const PairData& pair);
Angle zeta_constant(const PairData& pair);

// The cell sums use the factorization g = x b (torus on the left) with
// phi~(x b) = chi^{-1}(b), as written in the vanishing argument. The
// functional invariant under right translation is phi~(b x) = chi^{-1}(b);
// for it the same test vector gives phi(J f~) = consistent_phi_J_ftilde,
// and j_row_kills records whether phi = zeta phi o J forces phi = 0.
struct S1S2 {
    bool s1_zero = false, s2_zero = false;
    cplx s1, s2;
    cplx consistent_phi_J_ftilde;
    bool j_row_kills = false;
    bool orthogonality_zero = false;
    bool fiber_count_ok = false;
    cplx phi_of_ftilde;
    i64 x1_size = 0, x2_size = 0;
};
S1S2 s1_s2_vanishing(const Gl2Fq& G, const PairData& pair);

}  // namespace distlab
