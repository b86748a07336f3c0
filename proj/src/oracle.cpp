// Dense, from-scratch version of the s0/s1 conditions. Group elements are
// enumerated in full, induced representations are realised as functions
// on GL_2(F_Q), and Jacquet lines come from fixed-point computations.

#include <Eigen/SVD>
#include <cmath>

#include "distlab/distinction.hpp"

namespace distlab {

namespace {

constexpr double kTol = 1e-9;

cplx root(i64 num, i64 den) {
    double t = 2.0 * M_PI * static_cast<double>(mod(num, den)) / static_cast<double>(den);
    return {std::cos(t), std::sin(t)};
}

Mat nullspace(const Mat& A) {
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > kTol * std::max(1.0, s(0))) rank = i + 1;
    return svd.matrixV().rightCols(A.cols() - rank);
}

class Group {
public:
    explicit Group(const Gl2Fq& G) : G_(G), Q_(G.Q()), all_(G.all_elements()), index_(Q_ * Q_ * Q_ * Q_, -1) {
        for (std::size_t i = 0; i < all_.size(); ++i) index_[code(all_[i])] = static_cast<int>(i);
    }
    int size() const { return static_cast<int>(all_.size()); }
    const Gl2Element& at(int i) const { return all_[i]; }
    int idx(const Gl2Element& g) const { return index_[code(g)]; }
    const Gl2Fq& G() const { return G_; }

private:
    i64 code(const Gl2Element& g) const { return ((g.a * Q_ + g.b) * Q_ + g.c) * Q_ + g.d; }
    const Gl2Fq& G_;
    i64 Q_;
    std::vector<Gl2Element> all_;
    std::vector<int> index_;
};

// Ind_B^G(chi1 x chi2) as functions on G, h(bg) = chi(b) h(g).
class InducedFunctions {
public:
    InducedFunctions(const Group& grp, const MulCharacter& c1, const MulCharacter& c2)
        : grp_(grp), c1_(c1), c2_(c2) {
        const auto& F = grp.G().field();
        std::vector<Gl2Element> borel;
        for (int i = 0; i < grp.size(); ++i)
            if (grp.at(i).c == 0) borel.push_back(grp.at(i));
        std::vector<bool> covered(grp.size(), false);
        for (int i = 0; i < grp.size(); ++i) {
            if (covered[i]) continue;
            reps_.push_back(i);
            Vec e = Vec::Zero(grp.size());
            for (const auto& b : borel) {
                int j = grp.idx(grp.G().mul(b, grp.at(i)));
                covered[j] = true;
                e(j) = chi(F, b);
            }
            basis_.push_back(std::move(e));
        }
    }

    int dim() const { return static_cast<int>(reps_.size()); }
    cplx chi(const FiniteField& F, const Gl2Element& b) const {
        return root(c1_.a * F.log(b.a), c1_.n) * root(c2_.a * F.log(b.d), c2_.n);
    }
    // coordinates = values at the coset representatives
    Vec coords(const Vec& fn) const {
        Vec v(dim());
        for (int i = 0; i < dim(); ++i) v(i) = fn(reps_[i]);
        return v;
    }
    Vec function(const Vec& coords) const {
        Vec fn = Vec::Zero(grp_.size());
        for (int j = 0; j < dim(); ++j) fn += coords(j) * basis_[j];
        return fn;
    }
    // right translation by y
    Mat matrix(const Gl2Element& y) const {
        Mat m(dim(), dim());
        for (int j = 0; j < dim(); ++j)
            for (int i = 0; i < dim(); ++i) m(i, j) = basis_[j](grp_.idx(grp_.G().mul(grp_.at(reps_[i]), y)));
        return m;
    }
    const std::vector<int>& reps() const { return reps_; }
    const Vec& basis(int j) const { return basis_[j]; }

private:
    const Group& grp_;
    MulCharacter c1_, c2_;
    std::vector<int> reps_;
    std::vector<Vec> basis_;
};

struct Rows {
    int cols = 0;
    std::vector<Eigen::RowVectorXcd> rows;
    void add(int offset, const Mat& block) {
        for (int r = 0; r < block.rows(); ++r) {
            Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(cols);
            row.segment(offset, block.cols()) = block.row(r);
            rows.push_back(std::move(row));
        }
    }
    void add2(int oa, const Vec& va, int ob, const Vec& vb) {
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(cols);
        row.segment(oa, va.size()) += va.transpose();
        row.segment(ob, vb.size()) -= vb.transpose();
        rows.push_back(std::move(row));
    }
};

// Jacquet vector in the zero-sum functions on P^1 fixed by the unipotent
// radical N stabilising d, scaled to value 1 at d.
Vec steinberg_jacquet(const Gl2Fq& G, const std::vector<Gl2Element>& N, int d) {
    int n = G.num_points();
    Mat A = Mat::Zero(0, n);
    for (const auto& u : N) {
        Mat P = Mat::Zero(n, n);
        for (int x = 0; x < n; ++x) P(G.act(u, x), x) = 1.0;
        Mat blk = P - Mat::Identity(n, n);
        Mat B(A.rows() + n, n);
        B << A, blk;
        A = B;
    }
    Mat B(A.rows() + 1, n);
    B << A, Eigen::RowVectorXcd::Ones(n);
    Mat K = nullspace(B);
    if (K.cols() != 1) throw InvariantViolation("Steinberg Jacquet line is not one-dimensional");
    return K.col(0) / K(d, 0);
}

// Jacquet vectors (chi line, chi^w line) for the unipotent radical N.
std::pair<Vec, Vec> induced_jacquet(const InducedFunctions& U, const Group& grp, const std::vector<Gl2Element>& N,
                                    const MulCharacter& c1, const MulCharacter& c2) {
    const auto& G = grp.G();
    const auto& F = G.field();
    int n = U.dim();
    Mat A = Mat::Zero(0, n);
    for (const auto& u : N) {
        Mat B(A.rows() + n, n);
        B << A, Mat(U.matrix(u) - Mat::Identity(n, n));
        A = B;
    }
    Mat K = nullspace(A);
    if (K.cols() != 2) throw InvariantViolation("induced Jacquet space is not two-dimensional");
    auto project = [&](bool swapped) {
        Mat P = Mat::Zero(n, n);
        for (i64 s = 1; s < G.Q(); ++s)
            for (i64 t = 1; t < G.Q(); ++t) {
                Gl2Element d = G.diag(s, t);
                cplx val = swapped ? root(c2.a * F.log(s), c2.n) * root(c1.a * F.log(t), c1.n)
                                   : root(c1.a * F.log(s), c1.n) * root(c2.a * F.log(t), c2.n);
                P += std::conj(val) * U.matrix(d);
            }
        Mat img = P * K;
        int best = img.col(0).norm() >= img.col(1).norm() ? 0 : 1;
        return Vec(img.col(best));
    };
    Vec vchi = project(false), vchiw = project(true);
    Vec f1 = U.function(vchi), fw = U.function(vchiw);
    int id = grp.idx(Gl2Element{}), w = grp.idx(G.w());
    if (std::abs(f1(id)) < kTol || std::abs(fw(w)) < kTol) throw InvariantViolation("Jacquet normalisation");
    return {vchi / f1(id), vchiw / fw(w)};
}

}  // namespace

int brute_force_oracle(const PairData& pair, int R, const OracleOptions& opt) {
    if (R < 0 || R > 1) throw ConfigError("oracle supports R <= 1");
    const i64 Q = pair.params.Q, q = pair.params.q;
    if (Q > 9) throw SizeCap("oracle supports Q <= 9");
    Gl2Fq G(Q);
    const auto& F = G.field();

    // chi restricted to the residue image of F^x, i.e. chi0(x^2) for x in k^x
    const i64 step = (Q - 1) / (q - 1);
    for (i64 k = 0; k < q - 1; ++k) {
        i64 x = F.exp(k * step);
        if (mod(pair.chi0.a * F.log(F.mul(x, x)), pair.chi0.n) != 0) return 0;
    }

    Group grp(G);
    std::vector<Gl2Element> torus, ks1, N_up, N_low;
    for (int i = 0; i < grp.size(); ++i) {
        const auto& g = grp.at(i);
        if (g.a == g.d && g.b == F.mul(F.generator(), g.c)) torus.push_back(g);
        if (g.b == 0 && g.a == g.d) ks1.push_back(g);
        if (g.c == 0 && g.a == 1 && g.d == 1) N_up.push_back(g);
        if (g.b == 0 && g.a == 1 && g.d == 1) N_low.push_back(g);
    }
    if (static_cast<i64>(torus.size()) != Q * Q - 1) throw InvariantViolation("torus enumeration");

    const int f = pair.f;
    const int n_st = static_cast<int>(Q + 1);
    std::vector<MulCharacter> twist(f);
    for (int nu = 0; nu < f; ++nu) twist[nu] = pair.chi0.power(ipow(q, nu));
    struct Blk {
        int nu1, nu2;
        InducedFunctions U;
    };
    std::vector<Blk> blocks;
    for (int a = 0; a < f; ++a)
        for (int b = a + 1; b < f; ++b) blocks.push_back({a, b, InducedFunctions(grp, twist[a], twist[b])});

    // unknowns: per vertex, f Steinberg duals (functions on P^1) then the blocks
    int per_vertex = f * n_st;
    for (const auto& b : blocks) per_vertex += b.U.dim();
    Rows rows;
    rows.cols = per_vertex * (R + 1);
    auto st_off = [&](int v, int nu) { return v * per_vertex + nu * n_st; };
    auto ind_off = [&](int v, std::size_t b) {
        int o = v * per_vertex + f * n_st;
        for (std::size_t i = 0; i < b; ++i) o += blocks[i].U.dim();
        return o;
    };

    Mat proj = Mat::Identity(n_st, n_st) - Mat::Constant(n_st, n_st, 1.0 / n_st);
    auto perm_dual = [&](const Gl2Element& g) {
        // (Pi phi)(y) = phi(g y)
        Mat P = Mat::Zero(n_st, n_st);
        for (int y = 0; y < n_st; ++y) P(y, G.act(g, y)) = 1.0;
        return P;
    };
    auto norm_to_k = [&](const Gl2Element& t) {
        i64 det = F.sub(F.mul(t.a, t.d), F.mul(t.b, t.c));
        return F.pow(det, step);
    };

    for (int v = 0; v <= R; ++v)
        for (int nu = 0; nu < f; ++nu) rows.add(st_off(v, nu), Eigen::RowVectorXcd::Ones(n_st));

    if (!opt.drop_equivariance) {
        for (const auto& t : torus) {
            i64 nk = norm_to_k(t);
            for (int nu = 0; nu < f; ++nu) {
                cplx tau = root(twist[nu].a * F.log(nk), twist[nu].n);
                rows.add(st_off(0, nu), proj * (tau * perm_dual(t) - Mat::Identity(n_st, n_st)));
            }
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                const auto& U = blocks[b].U;
                rows.add(ind_off(0, b), Mat(U.matrix(t) - Mat::Identity(U.dim(), U.dim())).transpose());
            }
        }
        if (R == 1)
            for (const auto& g : ks1) {
                for (int nu = 0; nu < f; ++nu)
                    rows.add(st_off(1, nu), proj * (perm_dual(g) - Mat::Identity(n_st, n_st)));
                for (std::size_t b = 0; b < blocks.size(); ++b) {
                    const auto& U = blocks[b].U;
                    rows.add(ind_off(1, b), Mat(U.matrix(g) - Mat::Identity(U.dim(), U.dim())).transpose());
                }
            }
    }
    for (int nu = 0; nu + 1 < f; ++nu) {
        Mat blk = Mat::Zero(n_st, rows.cols);
        blk.block(0, st_off(0, nu), n_st, n_st) = proj;
        blk.block(0, st_off(0, nu + 1), n_st, n_st) = -proj;
        rows.add(0, blk);
    }

    if (f % 2 == 0) {
        const int h = f / 2;
        std::size_t b0 = 0;
        while (!(blocks[b0].nu1 == 0 && blocks[b0].nu2 == h)) ++b0;
        const auto& U = blocks[b0].U;
        const auto& c1 = twist[0];
        const auto& c2 = twist[h];
        // F(b1 w u) = chi^w(b1), zero on B
        Vec kernel = Vec::Zero(grp.size());
        for (int i = 0; i < grp.size(); ++i) {
            const auto& b1 = grp.at(i);
            if (b1.c != 0) continue;
            cplx val = root(c2.a * F.log(b1.a), c2.n) * root(c1.a * F.log(b1.d), c1.n);
            for (i64 x = 0; x < Q; ++x) kernel(grp.idx(G.mul(G.mul(b1, G.w()), G.upper_unipotent(x)))) = val;
        }
        const int delta = pair.params.delta;
        const i64 back = ipow(q, (delta - h % delta) % delta);
        int n = U.dim();
        Mat J(n, n);
        for (int j = 0; j < n; ++j) {
            const Vec& e = U.basis(j);
            for (int i = 0; i < n; ++i) {
                Gl2Element x = G.frobenius(grp.at(U.reps()[i]), back);
                cplx s = 0;
                for (int k = 0; k < grp.size(); ++k)
                    if (e(k) != cplx(0)) s += kernel(grp.idx(G.mul(x, G.inv(grp.at(k))))) * e(k);
                J(i, j) = s;
            }
        }
        // Whittaker line: sigma(u_x) f0 = mu(x) f0
        Mat A = Mat::Zero(0, n);
        for (i64 x = 0; x < Q; ++x) {
            cplx mu = root(F.abs_trace(x), F.p());
            Mat B(A.rows() + n, n);
            B << A, Mat(U.matrix(G.upper_unipotent(x)) - mu * Mat::Identity(n, n));
            A = B;
        }
        Mat W = nullspace(A);
        if (W.cols() != 1) throw InvariantViolation("Whittaker line is not one-dimensional");
        Vec f0 = W.col(0);
        cplx c = f0.dot(J * f0) / f0.dot(f0);
        J /= c;
        cplx zeta = root((pair.e - 1) * pair.chi_f.residue.a, 2) * pair.chi_f.unif.value();
        rows.add(ind_off(0, b0), Mat(Mat::Identity(n, n) - zeta * J).transpose());
        for (int nu1 = 0; nu1 + 1 < h; ++nu1) {
            std::size_t a = 0, b = 0;
            while (!(blocks[a].nu1 == nu1 && blocks[a].nu2 == nu1 + h)) ++a;
            while (!(blocks[b].nu1 == nu1 + 1 && blocks[b].nu2 == nu1 + 1 + h)) ++b;
            Mat blk = Mat::Zero(n, rows.cols);
            blk.block(0, ind_off(0, a), n, n) = Mat::Identity(n, n);
            blk.block(0, ind_off(0, b), n, n) = -Mat::Identity(n, n);
            rows.add(0, blk);
        }
    }

    if (R == 1) {
        Vec h0 = steinberg_jacquet(G, N_up, 0);
        Vec h1 = steinberg_jacquet(G, N_low, static_cast<int>(Q));
        for (int nu = 0; nu < f; ++nu) rows.add2(st_off(0, nu), h0, st_off(1, nu), h1);
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            auto [a_chi, a_chiw] = induced_jacquet(blocks[b].U, grp, N_up, twist[blocks[b].nu1], twist[blocks[b].nu2]);
            auto [b_chi, b_chiw] = induced_jacquet(blocks[b].U, grp, N_low, twist[blocks[b].nu1], twist[blocks[b].nu2]);
            rows.add2(ind_off(0, b), a_chi, ind_off(1, b), b_chi);
            rows.add2(ind_off(0, b), a_chiw, ind_off(1, b), b_chiw);
        }
    }

    Mat A(static_cast<int>(rows.rows.size()), rows.cols);
    for (std::size_t i = 0; i < rows.rows.size(); ++i) A.row(static_cast<int>(i)) = rows.rows[i];
    return static_cast<int>(nullspace(A).cols());
}

}  // namespace distlab
