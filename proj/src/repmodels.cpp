#include "distlab/repmodels.hpp"

#include <numeric>

#include "distlab/ffchar.hpp"

namespace distlab {

namespace {

constexpr double kTol = 1e-9;

int numeric_rank(const Mat& m) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > 1e-7) ++r;
    return r;
}

i64 exact_average(const CyclotomicSum& acc, i64 size, const std::string& what) {
    i64 total = 0;
    if (!acc.is_integer(&total) || total % size != 0)
        throw IntegralityViolation(what + ": character sum is not an integer multiple of |H|");
    return total / size;
}

}  // namespace

Angle char_value(const FiniteField& F, const MulCharacter& chi, i64 x) {
    if (x == 0) throw std::domain_error("character evaluated at 0");
    return chi.at_log(F.log(x));
}

Angle norm_twist(const Gl2Fq& G, const MulCharacter& chi0, const Gl2Element& t, i64 q) {
    i64 Q = G.Q();
    Gl2Element n = G.pow(t, (Q * Q - 1) / (q - 1));
    return char_value(G.field(), chi0, n.a);
}

// ---------------------------------------------------------------------------

SteinbergModel::SteinbergModel(const Gl2Fq& G, MulCharacter twist) : G_(&G), twist_(twist) {}

Mat SteinbergModel::matrix(const Gl2Element& g, const Angle& tau) const {
    int n = dim();
    Mat m = Mat::Zero(n, n);
    cplx t = tau.value();
    int g0 = G_->act(g, 0);
    for (int x = 1; x <= n; ++x) {
        int gx = G_->act(g, x);
        if (gx != 0) m(gx - 1, x - 1) += t;
        if (g0 != 0) m(g0 - 1, x - 1) -= t;
    }
    return m;
}

int SteinbergModel::trace_untwisted(const Gl2Element& g) const {
    int fixed = 0;
    for (int x = 0; x <= dim(); ++x)
        if (G_->act(g, x) == x) ++fixed;
    return fixed - 1;
}

Vec SteinbergModel::jacquet(int droite) const {
    std::vector<cplx> h(dim() + 1, -1.0 / static_cast<double>(dim()));
    h[droite] = 1.0;
    return from_function(h);
}

Vec SteinbergModel::from_function(const std::vector<cplx>& h) const {
    Vec v(dim());
    for (int x = 1; x <= dim(); ++x) v(x - 1) = h[x];
    return v;
}

std::vector<cplx> SteinbergModel::to_function(const Vec& v) const {
    std::vector<cplx> h(dim() + 1);
    h[0] = -v.sum();
    for (int x = 1; x <= dim(); ++x) h[x] = v(x - 1);
    return h;
}

// ---------------------------------------------------------------------------

InducedModel::InducedModel(const Gl2Fq& G, MulCharacter chi1, MulCharacter chi2)
    : G_(&G), chi1_(chi1), chi2_(chi2) {}

Angle InducedModel::borel_char(const Gl2Element& b) const {
    const auto& F = G_->field();
    return char_value(F, chi1_, b.a) + char_value(F, chi2_, b.d);
}

Mat InducedModel::matrix(const Gl2Element& g) const {
    int n = dim();
    Mat m = Mat::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        Gl2Element h = G_->mul(G_->coset_rep(x), g);
        int y = G_->bottom_row_index(h);
        Gl2Element b = G_->mul(h, G_->inv(G_->coset_rep(y)));
        m(x, y) = borel_char(b).value();
    }
    return m;
}

cplx InducedModel::trace_exact(const Gl2Element& g, CyclotomicSum* acc) const {
    cplx t = 0;
    for (int x = 0; x < dim(); ++x) {
        Gl2Element h = G_->mul(G_->coset_rep(x), g);
        if (G_->bottom_row_index(h) != x) continue;
        Angle a = borel_char(G_->mul(h, G_->inv(G_->coset_rep(x))));
        t += a.value();
        if (acc) acc->add(a);
    }
    return t;
}

Vec InducedModel::f_B() const {
    Vec v = Vec::Zero(dim());
    v(dim() - 1) = 1.0;
    return v;
}

Vec InducedModel::f_w() const {
    Vec v = Vec::Ones(dim());
    v(dim() - 1) = 0.0;
    return v;
}

std::pair<Vec, Vec> InducedModel::jacquet(int droite) const {
    Mat s = matrix(G_->moving_base_to(droite));
    return {s * f_B(), s * f_w()};
}

cplx InducedModel::value_at(const Vec& h, const Gl2Element& g) const {
    int y = G_->bottom_row_index(g);
    Gl2Element b = G_->mul(g, G_->inv(G_->coset_rep(y)));
    return borel_char(b).value() * h(y);
}

// ---------------------------------------------------------------------------

std::string Component::label() const {
    if (kind == ComponentKind::Steinberg) return "W^" + std::to_string(nu1);
    return "U^{" + std::to_string(nu1) + "," + std::to_string(nu2) + "}";
}

std::vector<Component> decompose_Vs(const PairData& pair) {
    std::vector<Component> out;
    int Q = static_cast<int>(pair.params.Q);
    for (int nu = 0; nu < pair.f; ++nu)
        out.push_back({ComponentKind::Steinberg, nu, nu, pair.chi0_twist(nu), pair.chi0_twist(nu), Q});
    for (int a = 0; a < pair.f; ++a)
        for (int b = a + 1; b < pair.f; ++b)
            out.push_back({ComponentKind::Induced, a, b, pair.chi0_twist(a), pair.chi0_twist(b), Q + 1});
    return out;
}

int total_dim(const std::vector<Component>& comps) {
    int s = 0;
    for (const auto& c : comps) s += c.dim;
    return s;
}

InvariantDim invariant_dim(const SteinbergModel& m, const std::vector<Gl2Element>& H, const TwistFn& tau) {
    Mat P = Mat::Zero(m.dim(), m.dim());
    CyclotomicSum acc(m.twist().n);
    for (const auto& h : H) {
        Angle t = tau(h);
        P += m.matrix(h, t);
        acc.add(t, m.trace_untwisted(h));
    }
    P /= static_cast<double>(H.size());
    InvariantDim r;
    r.by_rank = numeric_rank(P);
    r.by_character = exact_average(acc, static_cast<i64>(H.size()), "Steinberg");
    return r;
}

InvariantDim invariant_dim(const InducedModel& m, const std::vector<Gl2Element>& H) {
    Mat P = Mat::Zero(m.dim(), m.dim());
    CyclotomicSum acc(m.chi1().n);
    for (const auto& h : H) {
        P += m.matrix(h);
        m.trace_exact(h, &acc);
    }
    P /= static_cast<double>(H.size());
    InvariantDim r;
    r.by_rank = numeric_rank(P);
    r.by_character = exact_average(acc, static_cast<i64>(H.size()), "induced");
    return r;
}

i64 inner_product_trivial_on_Ks1(const Gl2Fq& G, const InducedModel& m) {
    const auto& F = G.field();
    CyclotomicSum acc(m.chi1().n);
    for (i64 u = 1; u < G.Q(); ++u) acc.add(char_value(F, m.chi1(), u) + char_value(F, m.chi2(), u));
    i64 s = 0;
    if (!acc.is_integer(&s) || (2 * s) % (G.Q() - 1) != 0)
        throw IntegralityViolation("<chi, 1_Ks1> is not an integer");
    return 2 * s / (G.Q() - 1);
}

HalfShiftResult triviality_forces_halfshift(const MulCharacter& chi0, int f, i64 q) {
    HalfShiftResult r;
    for (int a = 0; a < f; ++a)
        for (int b = a + 1; b < f; ++b) {
            MulCharacter prod = chi0.power(ipow(q, a)) * chi0.power(ipow(q, b));
            if (!prod.is_trivial()) continue;
            r.trivial_pairs.push_back({a, b});
            bool ok = f % 2 == 0 && b == a + f / 2 && is_trivial_on_subfield(chi0, ipow(q, f / 2));
            r.law_holds = r.law_holds && ok;
        }
    return r;
}

Vec whittaker_vector(const Gl2Fq& G, const InducedModel& m) {
    const auto& F = G.field();
    Vec v = Vec::Zero(m.dim());
    for (int y = 0; y < G.Q(); ++y) v(y) = Angle(F.abs_trace(y), F.p()).value();
    return v;
}

Angle zeta_constant(const PairData& pair) {
    return Angle((pair.e - 1) * pair.chi_f.residue.a, 2) + pair.chi_f.unif;
}

namespace {

i64 psi_inverse_power(const PairData& pair) {
    int delta = pair.params.delta;
    int h = (pair.f / 2) % delta;
    return ipow(pair.params.q, (delta - h) % delta);
}

Angle kernel_char(const Gl2Fq& G, const InducedModel& block, const Gl2Element& g, bool* in_borel) {
    Bruhat b = G.bruhat_decompose(g);
    *in_borel = b.in_borel;
    if (b.in_borel) return Angle();
    const auto& F = G.field();
    return char_value(F, block.chi2(), b.t1) + char_value(F, block.chi1(), b.t2);
}

}  // namespace

IntertwinerJ build_J(const Gl2Fq& G, const InducedModel& block, const PairData& pair) {
    if (pair.f % 2 != 0) throw std::invalid_argument("build_J: f must be even");
    if (!(block.chi1() == pair.chi0_twist(0)) || !(block.chi2() == pair.chi0_twist(pair.f / 2)))
        throw std::invalid_argument("build_J: block is not U^{0,f/2}");
    int n = block.dim();
    IntertwinerJ r;
    r.e = pair.e;
    r.psi_power = ipow(pair.params.q, pair.f / 2);
    r.L = Mat::Zero(n, n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            bool borel = false;
            Gl2Element g = G.mul(G.coset_rep(x), G.inv(G.coset_rep(y)));
            Angle a = kernel_char(G, block, g, &borel);
            if (!borel) r.L(x, y) = a.value() / static_cast<double>(n);
        }
    i64 pinv = psi_inverse_power(pair);
    Mat P = Mat::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        int xs = x == G.Q() ? x : static_cast<int>(G.field().pow(x, pinv));
        P(x, xs) = 1.0;
    }
    Mat J0 = P * r.L;
    Vec f0 = whittaker_vector(G, block);
    Vec jf = J0 * f0;
    cplx c = f0.dot(jf) / f0.dot(f0);
    if (std::abs(c) < kTol || (jf - c * f0).norm() > kTol * f0.norm())
        throw NormalizationFailure("J f0 is not a nonzero multiple of f0");
    r.J = J0 / c;
    r.L /= c;
    r.F_w = 1.0 / c;
    r.zeta = zeta_constant(pair);
    return r;
}

S1S2 s1_s2_vanishing(const Gl2Fq& G, const PairData& pair) {
    if (pair.f % 2 != 0) throw std::invalid_argument("s1_s2_vanishing: f must be even");
    InducedModel block(G, pair.chi0_twist(0), pair.chi0_twist(pair.f / 2));
    if (!(block.chi1() * block.chi2()).is_trivial())
        throw std::invalid_argument("s1_s2_vanishing: chi1 chi2 must be trivial on k_Delta^x");
    if (block.chi1() == block.chi2()) throw std::invalid_argument("s1_s2_vanishing: chi1 = chi2");

    const auto& F = G.field();
    NonsplitTorus T(G);
    std::vector<Gl2Element> rep_for_point(G.num_points());
    for (const auto& r : T.coset_reps()) rep_for_point[G.act(r, 0)] = r;

    // g = x b with x in the torus
    auto phi_tilde = [&](const Gl2Element& g) {
        Gl2Element b = G.mul(G.inv(rep_for_point[G.act(g, 0)]), g);
        if (!G.is_upper(b)) throw InvariantViolation("G = T.B factorization failed");
        return -block.borel_char(b);
    };
    // g = b x with x in the torus
    auto phi_tilde_right = [&](const Gl2Element& g) {
        Gl2Element b = G.mul(g, rep_for_point[G.act(G.inv(g), 0)]);
        if (!G.is_upper(b)) throw InvariantViolation("G = B.T factorization failed");
        return -block.borel_char(b);
    };
    i64 pinv = psi_inverse_power(pair);
    IntertwinerJ J = build_J(G, block, pair);

    S1S2 r;
    CyclotomicSum acc1(block.chi1().n), acc2(block.chi1().n), accB(block.chi1().n), accR(block.chi1().n);
    for (const auto& g : G.all_elements()) {
        if (g.c == 0) {
            accB.add(phi_tilde(g) + block.borel_char(g));
            continue;
        }
        bool borel = false;
        Angle k = kernel_char(G, block, G.frobenius(g, pinv), &borel);
        Angle term = phi_tilde(g) + k;
        accR.add(phi_tilde_right(g) + k);
        if (g.a == 0) {
            acc1.add(term);
            ++r.x1_size;
        } else {
            acc2.add(term);
            ++r.x2_size;
        }
    }
    double scale = 1.0 / static_cast<double>(G.order());
    r.s1_zero = acc1.is_zero();
    r.s2_zero = acc2.is_zero();
    r.s1 = acc1.value() * J.F_w * scale;
    r.s2 = acc2.value() * J.F_w * scale;
    r.phi_of_ftilde = accB.value() / static_cast<double>(G.borel_elements().size());
    r.consistent_phi_J_ftilde = accR.value() * J.F_w * scale;

    Mat A = (block.matrix(T.generator()) - Mat::Identity(block.dim(), block.dim())).transpose();
    Eigen::FullPivLU<Mat> lu(A);
    lu.setThreshold(kTol);
    Mat ker = lu.kernel();
    if (ker.cols() != 1) throw InvariantViolation("torus-invariant functional is not unique");
    Eigen::RowVectorXcd l = ker.col(0).transpose();
    Eigen::RowVectorXcd res = l - J.zeta.value() * (l * J.J);
    r.j_row_kills = res.norm() > 1e-6 * l.norm();

    CyclotomicSum orth(block.chi1().n);
    for (i64 b = 1; b < G.Q(); ++b) orth.add(char_value(F, block.chi1(), b) - char_value(F, block.chi2(), b));
    r.orthogonality_zero = orth.is_zero();

    r.fiber_count_ok = true;
    for (i64 A = 1; A < G.Q(); ++A)
        for (i64 C = 1; C < G.Q(); ++C)
            for (i64 s = 1; s < G.Q(); ++s) {
                i64 cnt = 0;
                for (i64 B = 0; B < G.Q(); ++B)
                    for (i64 D = 0; D < G.Q(); ++D)
                        if (F.sub(F.mul(A, D), F.mul(B, C)) == s) ++cnt;
                r.fiber_count_ok = r.fiber_count_ok && cnt == G.Q();
            }
    return r;
}

}  // namespace distlab
