#include "distlab/gl2fq.hpp"

#include <algorithm>

namespace distlab {

Gl2Fq::Gl2Fq(i64 Q) : F_(std::make_shared<FiniteField>(FiniteField::of_order(Q))), Q_(Q) {
    if (Q % 2 == 0) throw ConfigError("Gl2Fq: Q must be odd");
}

Gl2Element Gl2Fq::mul(const Gl2Element& x, const Gl2Element& y) const {
    const auto& F = *F_;
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

i64 Gl2Fq::det(const Gl2Element& x) const { return F_->sub(F_->mul(x.a, x.d), F_->mul(x.b, x.c)); }

Gl2Element Gl2Fq::inv(const Gl2Element& x) const {
    i64 di = F_->inv(det(x));
    const auto& F = *F_;
    return {F.mul(x.d, di), F.mul(F.neg(x.b), di), F.mul(F.neg(x.c), di), F.mul(x.a, di)};
}

Gl2Element Gl2Fq::pow(Gl2Element x, i64 e) const {
    Gl2Element r;
    while (e) {
        if (e & 1) r = mul(r, x);
        x = mul(x, x);
        e >>= 1;
    }
    return r;
}

Gl2Element Gl2Fq::frobenius(const Gl2Element& x, i64 pp) const {
    return {F_->pow(x.a, pp), F_->pow(x.b, pp), F_->pow(x.c, pp), F_->pow(x.d, pp)};
}

ProjPoint Gl2Fq::normalize(i64 x, i64 y) const {
    if (x != 0) return {1, F_->div(y, x)};
    if (y == 0) throw std::domain_error("ProjPoint: (0:0)");
    return {0, 1};
}

int Gl2Fq::act(const Gl2Element& g, int idx) const {
    ProjPoint p = point(idx);
    const auto& F = *F_;
    return index(normalize(F.add(F.mul(g.a, p.x), F.mul(g.b, p.y)), F.add(F.mul(g.c, p.x), F.mul(g.d, p.y))));
}

Gl2Element Gl2Fq::coset_rep(int idx) const {
    if (idx == Q_) return {};
    return {0, 1, 1, idx};  // w * [[1,y],[0,1]]
}

Gl2Element Gl2Fq::moving_base_to(int idx) const {
    if (idx == Q_) return w();
    return {1, 0, idx, 1};
}

Bruhat Gl2Fq::bruhat_decompose(const Gl2Element& g) const {
    Bruhat r;
    if (g.c == 0) {
        r.in_borel = true;
        r.b = g;
        return r;
    }
    const auto& F = *F_;
    r.t2 = g.c;
    r.u2 = F.div(g.d, g.c);
    r.t1 = F.div(F.neg(det(g)), g.c);
    r.u1 = F.div(g.a, r.t1);
    return r;
}

std::vector<Gl2Element> Gl2Fq::all_elements() const {
    std::vector<Gl2Element> out;
    out.reserve(static_cast<std::size_t>(order()));
    for (i64 a = 0; a < Q_; ++a)
        for (i64 b = 0; b < Q_; ++b)
            for (i64 c = 0; c < Q_; ++c)
                for (i64 d = 0; d < Q_; ++d) {
                    Gl2Element x{a, b, c, d};
                    if (det(x) != 0) out.push_back(x);
                }
    return out;
}

std::vector<Gl2Element> Gl2Fq::borel_elements() const {
    std::vector<Gl2Element> out;
    for (i64 a = 1; a < Q_; ++a)
        for (i64 b = 0; b < Q_; ++b)
            for (i64 d = 1; d < Q_; ++d) out.push_back({a, b, 0, d});
    return out;
}

// ---------------------------------------------------------------------------

NonsplitTorus::NonsplitTorus(const Gl2Fq& G) : G_(&G), alpha_sq_(G.field().generator()) {
    i64 n = G.Q() * G.Q() - 1;
    auto primes = prime_factors(n);
    for (i64 x = 0; x < G.Q(); ++x) {
        Gl2Element t = element(x, 1);
        bool ok = true;
        for (i64 r : primes)
            if (G.pow(t, n / r) == Gl2Element{}) {
                ok = false;
                break;
            }
        if (ok) {
            generator_ = t;
            return;
        }
    }
    throw InvariantViolation("NonsplitTorus: no generator found");
}

std::vector<Gl2Element> NonsplitTorus::elements() const {
    std::vector<Gl2Element> out;
    for (i64 x = 0; x < G_->Q(); ++x)
        for (i64 y = 0; y < G_->Q(); ++y)
            if (x || y) out.push_back(element(x, y));
    return out;
}

std::vector<Gl2Element> NonsplitTorus::coset_reps() const {
    std::vector<Gl2Element> out{Gl2Element{}};
    for (i64 x = 0; x < G_->Q(); ++x) out.push_back(element(x, 1));
    return out;
}

std::vector<Gl2Element> NonsplitTorus::chart_reps(i64 q) const {
    auto reps = coset_reps();
    std::stable_partition(reps.begin(), reps.end(),
                          [&](const Gl2Element& g) { return norm_to_k_square_class(*G_, g, q) == 1; });
    return reps;
}

TransitivityResult torus_acts_simply_transitively(i64 Q) {
    Gl2Fq G(Q);
    NonsplitTorus T(G);
    TransitivityResult r;
    auto reps = T.coset_reps();
    r.coset_of_point.assign(G.num_points(), -1);
    bool free_ok = true;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        int pt = G.act(reps[i], 0);
        if (r.coset_of_point[pt] != -1) free_ok = false;
        r.coset_of_point[pt] = static_cast<int>(i);
    }
    std::vector<bool> seen(G.num_points(), false);
    for (const auto& t : T.elements()) seen[G.act(t, 0)] = true;
    r.orbit_size = static_cast<int>(std::count(seen.begin(), seen.end(), true));
    r.stabilizer_is_center = true;
    for (const auto& t : T.elements())
        if ((G.act(t, 0) == 0) != G.is_scalar(t)) r.stabilizer_is_center = false;
    r.simply_transitive = free_ok && r.orbit_size == G.num_points() && r.stabilizer_is_center;
    return r;
}

int norm_to_k_square_class(const Gl2Fq& G, const Gl2Element& t, i64 q) {
    i64 Q = G.Q();
    Gl2Element n = G.pow(t, (Q * Q - 1) / (q - 1));
    if (!G.is_scalar(n)) throw InvariantViolation("norm to k is not central");
    const auto& F = G.field();
    if (!F.in_subfield(n.a, q)) throw InvariantViolation("norm to k left the subfield");
    return F.pow(n.a, (q - 1) / 2) == 1 ? 1 : -1;
}

int count_square_norm_cosets(i64 Q, i64 q) {
    Gl2Fq G(Q);
    NonsplitTorus T(G);
    int r = 0;
    for (const auto& g : T.coset_reps())
        if (norm_to_k_square_class(G, g, q) == 1) ++r;
    return r;
}

std::vector<Gl2Element> mirabolic_elements(const Gl2Fq& G) {
    std::vector<Gl2Element> out;
    const auto& F = G.field();
    for (i64 u = 1; u < G.Q(); ++u)
        for (i64 w = 0; w < G.Q(); ++w) out.push_back({u, 0, F.mul(u, w), u});
    return out;
}

std::vector<Gl2Element> mirabolic_generators(const Gl2Fq& G) {
    const auto& F = G.field();
    std::vector<Gl2Element> out{G.scalar(F.generator())};
    for (int i = 0; i < F.degree(); ++i) out.push_back({1, 0, ipow(F.p(), i), 1});
    return out;
}

}  // namespace distlab
