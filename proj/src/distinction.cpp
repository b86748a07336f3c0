#include "distlab/distinction.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>

namespace distlab {

const char* const kNotDistinguished = "not distinguished";
const char* const kCandidate = "candidate (necessary conditions met)";

std::string to_string(RowTag tag) {
    switch (tag) {
        case RowTag::InvarianceS0: return "invariance-at-s0";
        case RowTag::InvarianceDepth: return "invariance-at-depth-k";
        case RowTag::Gluing: return "gluing";
        case RowTag::FrobeniusShift: return "frobenius-shift";
        case RowTag::UniformizerShift: return "uniformizer-shift";
        case RowTag::JFixedness: return "J-fixedness";
        case RowTag::CentralCharacter: return "central-character";
        case RowTag::Sign: return "sign";
    }
    return "?";
}

Eigen::SparseMatrix<cplx> ConstraintSystem::matrix() const {
    Eigen::SparseMatrix<cplx> m(rows, cols);
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

int ConstraintSystem::row_count(RowTag tag) const {
    int n = 0;
    for (const auto& b : row_blocks)
        if (b.tag == tag) n += b.count;
    return n;
}

int ConstraintSystem::block_count(RowTag tag) const {
    return static_cast<int>(std::count_if(row_blocks.begin(), row_blocks.end(),
                                          [&](const RowBlock& b) { return b.tag == tag; }));
}

const UnknownBlock& ConstraintSystem::block(int depth, int component) const {
    for (const auto& b : blocks)
        if (b.depth == depth && b.component == component) return b;
    throw std::out_of_range("no unknown block");
}

namespace {

constexpr double kEntryTol = 1e-14;

class Builder {
public:
    Builder(ConstraintSystem& s, const AssembleOptions& opt) : s_(s), opt_(opt) {}

    // Rows sum_j ublock_j * M_j = 0, one row per row of the M_j.
    void add(RowTag tag, const std::string& label, const std::vector<std::pair<const UnknownBlock*, Mat>>& parts) {
        if (opt_.drop.count(tag)) return;
        int n = static_cast<int>(parts.front().second.rows());
        int begin = s_.rows;
        for (const auto& [ub, M] : parts)
            for (int r = 0; r < M.rows(); ++r)
                for (int c = 0; c < M.cols(); ++c)
                    if (std::abs(M(r, c)) > kEntryTol) s_.entries.emplace_back(begin + r, ub->offset + c, M(r, c));
        s_.rows += n;
        s_.row_blocks.push_back({tag, label, begin, n});
    }

    // l (M - I) = 0 as rows (M - I)^T
    void invariance(RowTag tag, const std::string& label, const UnknownBlock& ub, const Mat& M) {
        Mat A = M.transpose() - Mat::Identity(M.rows(), M.cols());
        add(tag, label, {{&ub, A}});
    }

    // l_a(v_a) - l_b(v_b) = 0
    void pairing(RowTag tag, const std::string& label, const UnknownBlock& a, const Vec& va, const UnknownBlock& b,
                 const Vec& vb) {
        add(tag, label, {{&a, Mat(va.transpose())}, {&b, Mat(-vb.transpose())}});
    }

private:
    ConstraintSystem& s_;
    const AssembleOptions& opt_;
};

std::string depth_label(int k) { return "s" + std::to_string(k); }

}  // namespace

ConstraintSystem assemble(const PairData& pair, const TruncatedTree& tree, const AssembleOptions& opt) {
    if (!pair.central.is_trivial())
        throw CentralCharacterObstruction("chi is not trivial on the residue image of F^x");
    if (tree.tree_case() != TreeCase::Ramified) throw ConfigError("assemble: ramified tree expected");
    const i64 Q = pair.params.Q;
    const i64 q = pair.params.q;
    if (tree.Q() != Q) throw ConfigError("assemble: tree degree does not match Q + 1");

    Gl2Fq G(Q);
    NonsplitTorus T(G);
    const auto& F = G.field();

    ConstraintSystem sys;
    sys.Q = Q;
    const int R = opt.depth_limit >= 0 ? std::min(opt.depth_limit, tree.radius()) : tree.radius();
    sys.radius = R;
    sys.components = decompose_Vs(pair);
    const auto& comps = sys.components;
    for (int k = 0; k <= R; ++k)
        for (int c = 0; c < static_cast<int>(comps.size()); ++c) {
            sys.blocks.push_back({k, c, sys.cols, comps[c].dim});
            sys.cols += comps[c].dim;
        }

    std::vector<std::optional<SteinbergModel>> st(comps.size());
    std::vector<std::optional<InducedModel>> ind(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].kind == ComponentKind::Steinberg) st[c].emplace(G, comps[c].chi1);
        else ind[c].emplace(G, comps[c].chi1, comps[c].chi2);
    }
    auto component_index = [&](ComponentKind kind, int nu1, int nu2) {
        for (std::size_t c = 0; c < comps.size(); ++c)
            if (comps[c].kind == kind && comps[c].nu1 == nu1 && comps[c].nu2 == nu2) return static_cast<int>(c);
        throw std::out_of_range("component not found");
    };

    Builder b(sys, opt);
    const Gl2Element t = T.generator();
    const Gl2Element z = G.scalar(F.generator());
    const auto reps = T.chart_reps(q);
    const int Qi = static_cast<int>(Q);

    // s0
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto& ub = sys.block(0, static_cast<int>(c));
        std::string lab = depth_label(0) + " " + comps[c].label();
        if (st[c]) {
            b.invariance(RowTag::InvarianceS0, lab, ub, st[c]->matrix(t, norm_twist(G, comps[c].chi1, t, q)));
            b.invariance(RowTag::CentralCharacter, lab, ub, st[c]->matrix(z, norm_twist(G, comps[c].chi1, z, q)));
        } else {
            b.invariance(RowTag::InvarianceS0, lab, ub, ind[c]->matrix(t));
            b.invariance(RowTag::CentralCharacter, lab, ub, ind[c]->matrix(z));
        }
    }
    for (int nu = 0; nu + 1 < pair.f; ++nu) {
        int a = component_index(ComponentKind::Steinberg, nu, nu);
        int c = component_index(ComponentKind::Steinberg, nu + 1, nu + 1);
        Mat I = Mat::Identity(Qi, Qi);
        b.add(RowTag::FrobeniusShift, "W^" + std::to_string(nu) + " -> W^" + std::to_string(nu + 1),
              {{&sys.block(0, a), I}, {&sys.block(0, c), Mat(-I)}});
    }
    if (pair.f % 2 == 0) {
        const int h = pair.f / 2;
        int c0 = component_index(ComponentKind::Induced, 0, h);
        IntertwinerJ J = build_J(G, *ind[c0], pair);
        cplx zeta = J.zeta.value();
        Mat I = Mat::Identity(Qi + 1, Qi + 1);
        for (int nu1 = 0; nu1 < h; ++nu1) {
            int a = component_index(ComponentKind::Induced, nu1, nu1 + h);
            std::string lab = comps[a].label() + " -> ";
            if (nu1 + 1 < h) {
                int c = component_index(ComponentKind::Induced, nu1 + 1, nu1 + 1 + h);
                b.add(RowTag::UniformizerShift, lab + comps[c].label(),
                      {{&sys.block(0, a), I}, {&sys.block(0, c), Mat(-I)}});
            } else {
                // U^{h-1, 2h-1} -> U^{h, 0}, identified with U^{0,h} through zeta J
                Mat ZJ = zeta * J.J;
                if (a == c0) {
                    b.add(RowTag::UniformizerShift, lab + comps[c0].label() + " (wrap)",
                          {{&sys.block(0, a), Mat(I - ZJ).transpose()}});
                } else {
                    b.add(RowTag::UniformizerShift, lab + comps[c0].label() + " (wrap)",
                          {{&sys.block(0, a), I}, {&sys.block(0, c0), Mat(-ZJ.transpose())}});
                }
            }
        }
        b.add(RowTag::JFixedness, comps[c0].label(), {{&sys.block(0, c0), Mat(I - zeta * J.J).transpose()}});
    }

    // depth >= 1
    const auto gens = mirabolic_generators(G);
    for (int k = 1; k <= R; ++k)
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& ub = sys.block(k, static_cast<int>(c));
            std::string lab = depth_label(k) + " " + comps[c].label();
            for (const auto& g : gens)
                b.invariance(RowTag::InvarianceDepth, lab, ub, st[c] ? st[c]->matrix(g, Angle()) : ind[c]->matrix(g));
        }

    // gluing
    for (int k = 0; k < R; ++k)
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& up = sys.block(k, static_cast<int>(c));
            const auto& down = sys.block(k + 1, static_cast<int>(c));
            std::string lab = depth_label(k) + "-" + depth_label(k + 1) + " " + comps[c].label();
            if (st[c]) {
                Vec parent = st[c]->jacquet(Qi);
                if (k == 0) {
                    for (std::size_t i = 0; i < reps.size(); ++i) {
                        double alpha = norm_twist(G, comps[c].chi1, reps[i], q).value().real();
                        b.pairing(RowTag::Gluing, lab + " edge " + std::to_string(i), up,
                                  alpha * st[c]->jacquet(tree.root_droites()[i]), down, parent);
                    }
                } else {
                    for (int y : tree.child_droites())
                        b.pairing(RowTag::Gluing, lab + " child " + std::to_string(y), up, st[c]->jacquet(y), down,
                                  parent);
                }
            } else {
                int d = k == 0 ? tree.root_droites()[0] : tree.child_droites()[0];
                auto [vB, vw] = ind[c]->jacquet(d);
                auto [pB, pw] = ind[c]->jacquet(Qi);
                b.pairing(RowTag::Gluing, lab + " chi", up, vB, down, pw);
                b.pairing(RowTag::Gluing, lab + " chi^w", up, vw, down, pB);
            }
        }
    return sys;
}

namespace {

// Unknown blocks linked by some row, as groups of column ranges.
std::vector<std::vector<int>> coupled_groups(const ConstraintSystem& sys) {
    std::vector<int> owner(sys.cols);
    for (std::size_t i = 0; i < sys.blocks.size(); ++i)
        for (int c = 0; c < sys.blocks[i].dim; ++c) owner[sys.blocks[i].offset + c] = static_cast<int>(i);
    std::vector<int> parent(sys.blocks.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> first_in_row(sys.rows, -1);
    for (const auto& t : sys.entries) {
        int b = owner[t.col()];
        int& f = first_in_row[t.row()];
        if (f < 0) f = b;
        else parent[find(b)] = find(f);
    }
    std::vector<std::vector<int>> groups;
    std::vector<int> slot(sys.blocks.size(), -1);
    for (std::size_t i = 0; i < sys.blocks.size(); ++i) {
        int r = find(static_cast<int>(i));
        if (slot[r] < 0) slot[r] = static_cast<int>(groups.size()), groups.emplace_back();
        groups[slot[r]].push_back(static_cast<int>(i));
    }
    return groups;
}

}  // namespace

SolveResult solve(const ConstraintSystem& sys, double tol) {
    SolveResult r;
    Eigen::SparseMatrix<cplx, Eigen::ColMajor> A = sys.matrix();
    std::vector<Vec> null_vectors;
    r.smallest_nonzero_sv = 0;
    for (const auto& group : coupled_groups(sys)) {
        std::vector<int> cols;
        for (int b : group)
            for (int c = 0; c < sys.blocks[b].dim; ++c) cols.push_back(sys.blocks[b].offset + c);
        std::vector<int> row_map(sys.rows, -1);
        int nrows = 0;
        for (int c : cols)
            for (Eigen::SparseMatrix<cplx>::InnerIterator it(A, c); it; ++it)
                if (row_map[it.row()] < 0) row_map[it.row()] = nrows++;
        const int n = static_cast<int>(cols.size());
        Mat sub = Mat::Zero(nrows, n);
        for (int j = 0; j < n; ++j)
            for (Eigen::SparseMatrix<cplx>::InnerIterator it(A, cols[j]); it; ++it) sub(row_map[it.row()], j) = it.value();
        Mat V;
        int rank = 0;
        if (nrows > 0) {
            Eigen::BDCSVD<Mat> svd(sub, Eigen::ComputeFullV);
            const auto& s = svd.singularValues();
            double thresh = tol * std::max(1.0, s.size() ? s(0) : 0.0);
            for (int i = 0; i < s.size(); ++i)
                if (s(i) > thresh) rank = i + 1;
            if (rank > 0 && (r.smallest_nonzero_sv == 0 || s(rank - 1) < r.smallest_nonzero_sv))
                r.smallest_nonzero_sv = s(rank - 1);
            V = svd.matrixV();
        } else {
            V = Mat::Identity(n, n);
        }
        for (int j = rank; j < n; ++j) {
            Vec v = Vec::Zero(sys.cols);
            for (int i = 0; i < n; ++i) v(cols[i]) = V(i, j);
            null_vectors.push_back(std::move(v));
        }
    }
    r.nullity = static_cast<int>(null_vectors.size());
    r.null_basis = Mat::Zero(sys.cols, r.nullity);
    for (int j = 0; j < r.nullity; ++j) r.null_basis.col(j) = null_vectors[j];
    if (r.nullity > 0) r.witness = r.null_basis.col(0);
    return r;
}

double induced_null_part(const ConstraintSystem& sys, const SolveResult& res) {
    double m = 0;
    for (const auto& ub : sys.blocks) {
        if (sys.components.empty() || sys.components[ub.component].kind != ComponentKind::Induced) continue;
        if (res.nullity == 0) continue;
        m = std::max(m, res.null_basis.middleRows(ub.offset, ub.dim).norm());
    }
    return m;
}

double propagation_coefficient(i64 Q, int k) {
    double c = (Q + 1.0) / (2.0 * std::pow(static_cast<double>(Q), k));
    return k % 2 == 1 ? c : -c;
}

PropagationCheck check_propagation_formula(const ConstraintSystem& sys, const Vec& witness,
                                           const TruncatedTree& tree, bool flip_sign) {
    PropagationCheck pc;
    if (witness.size() == 0 || sys.components.empty()) return pc;
    pc.applicable = true;
    const int Q = static_cast<int>(sys.Q);
    const int half = (Q + 1) / 2;
    const auto& droites = tree.root_droites();

    for (std::size_t c = 0; c < sys.components.size(); ++c) {
        if (sys.components[c].kind != ComponentKind::Steinberg) continue;
        const auto& ub0 = sys.block(0, static_cast<int>(c));
        // phi~ at s0 with phi~(base) = 0
        auto phi0 = [&](int x) { return x == 0 ? cplx(0) : witness(ub0.offset + x - 1); };
        cplx C = phi0(droites.front()) - phi0(droites.back());
        if (c == 0) pc.C = C;

        // s0: phi(h) = C * sum over the square-norm droites
        for (int x = 1; x <= Q; ++x) {
            // h = e_x - e_0
            cplx sum = 0;
            for (int i = 0; i < half; ++i) sum += (droites[i] == x ? 1.0 : 0.0) - (droites[i] == 0 ? 1.0 : 0.0);
            pc.s0_kernel_residual = std::max(pc.s0_kernel_residual, std::abs(witness(ub0.offset + x - 1) - sum * C));
        }

        for (const auto& v : tree.vertices()) {
            if (v.depth == 0) continue;
            const auto& ub = sys.block(v.depth, static_cast<int>(c));
            double coef = propagation_coefficient(sys.Q, v.depth);
            if (flip_sign) coef = -coef;
            // spanning set e_x - e_0 of W_s; h(delta_{Q+1}^s) = [x == Q]
            for (int x = 1; x <= Q; ++x) {
                cplx predicted = coef * C * (x == Q ? 1.0 : 0.0);
                pc.max_residual = std::max(pc.max_residual, std::abs(witness(ub.offset + x - 1) - predicted));
            }
            ++pc.vertices_checked;
        }
    }
    return pc;
}

int s0_character_bound(const PairData& pair) {
    Gl2Fq G(pair.params.Q);
    NonsplitTorus T(G);
    auto H = T.elements();
    const i64 q = pair.params.q;
    SteinbergModel st(G, pair.chi0);
    int bound = static_cast<int>(
        invariant_dim(st, H, [&](const Gl2Element& t) { return norm_twist(G, pair.chi0, t, q); }).by_character);
    if (pair.f % 2 == 0) {
        InducedModel m(G, pair.chi0_twist(0), pair.chi0_twist(pair.f / 2));
        bound += static_cast<int>(invariant_dim(m, H).by_character);
    }
    return bound;
}

DistinctionReport run_distinction(const PairData& pair, int R_max, bool flip_sign) {
    auto t0 = std::chrono::steady_clock::now();
    DistinctionReport rep;
    if (!pair.central.is_trivial()) {
        rep.central_obstruction = true;
        rep.verdict = kNotDistinguished;
        for (int R = 1; R <= R_max; ++R) rep.nullity_by_R.push_back({R, 0});
        return rep;
    }
    rep.s0_character_bound = s0_character_bound(pair);
    for (int R = 1; R <= R_max; ++R) {
        auto tree = build_tree(pair.params.Q, R, TreeCase::Ramified);
        auto sys = assemble(pair, tree);
        auto res = solve(sys);
        if (!rep.nullity_by_R.empty() && res.nullity > rep.nullity_by_R.back().second) rep.monotone = false;
        rep.nullity_by_R.push_back({R, res.nullity});
        if (R == R_max) {
            rep.induced_residual = induced_null_part(sys, res);
            if (res.nullity == 1) {
                rep.witness = res.witness;
                rep.propagation = check_propagation_formula(sys, res.witness, tree, flip_sign);
            }
        }
    }
    rep.verdict = rep.nullity_by_R.back().second == 0 ? kNotDistinguished : kCandidate;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// Zero-sum functions on n points, coordinates = values at points 1..n-1.
Mat perm_steinberg(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size()) - 1;
    Mat m = Mat::Zero(n, n);
    for (int x = 1; x <= n; ++x) {
        if (perm[x] != 0) m(perm[x] - 1, x - 1) += 1.0;
        if (perm[0] != 0) m(perm[0] - 1, x - 1) -= 1.0;
    }
    return m;
}

Vec perm_jacquet(int n_points, int d) {
    Vec v(n_points - 1);
    for (int x = 1; x < n_points; ++x) v(x - 1) = x == d ? 1.0 : -1.0 / (n_points - 1);
    return v;
}

}  // namespace

ConstraintSystem assemble_unramified_steinberg(const TruncatedTree& tree, bool with_sign_row) {
    ConstraintSystem sys;
    const int n = tree.degree();
    const int Q = n - 1;
    sys.Q = Q;
    sys.radius = tree.radius();
    for (int k = 0; k <= tree.radius(); ++k) {
        sys.blocks.push_back({k, 0, sys.cols, Q});
        sys.cols += Q;
    }
    AssembleOptions opt;
    if (!with_sign_row) opt.drop.insert(RowTag::Sign);
    Builder b(sys, opt);

    // s0: cyclic on the droites other than the one toward s1
    const int toward_s1 = tree.root_droites()[0];
    std::vector<int> others;
    for (int d : tree.root_droites())
        if (d != toward_s1) others.push_back(d);
    std::vector<int> perm(n);
    perm[toward_s1] = toward_s1;
    for (std::size_t i = 0; i < others.size(); ++i) perm[others[i]] = others[(i + 1) % others.size()];
    b.invariance(RowTag::InvarianceS0, "s0 St", sys.block(0, 0), perm_steinberg(perm));

    // pi(varpi_D) swaps s0 and s1 and acts by -1 on the edge line
    b.add(RowTag::Sign, "edge {s0,s1}", {{&sys.block(0, 0), Mat(2.0 * perm_jacquet(n, toward_s1).transpose())}});

    // deeper: cyclic on the children, fixing the parent droite
    const int parent = tree.parent_droite_index();
    const auto& kids = tree.child_droites();
    std::vector<int> cperm(n);
    cperm[parent] = parent;
    for (std::size_t i = 0; i < kids.size(); ++i) cperm[kids[i]] = kids[(i + 1) % kids.size()];
    for (int k = 1; k <= tree.radius(); ++k)
        b.invariance(RowTag::InvarianceDepth, depth_label(k) + " St", sys.block(k, 0), perm_steinberg(cperm));

    for (int k = 0; k < tree.radius(); ++k) {
        const auto& down = k == 0 ? others : kids;
        for (int d : down)
            b.pairing(RowTag::Gluing, depth_label(k) + "-" + depth_label(k + 1) + " droite " + std::to_string(d),
                      sys.block(k, 0), perm_jacquet(n, d), sys.block(k + 1, 0), perm_jacquet(n, parent));
    }
    return sys;
}

DistinctionReport steinberg_case(const FieldParams& params, TreeCase tree_case, int tdeg, int R_max) {
    auto t0 = std::chrono::steady_clock::now();
    DistinctionReport rep;
    if (tree_case == TreeCase::Ramified) {
        PairData pair = build_pair_data(params, 1, TameCharacter{MulCharacter(params.q - 1, 0), Angle()});
        rep = run_distinction(pair, R_max);
    } else {
        if (tdeg < 3) throw ConfigError("tdeg must be >= 3");
        for (int R = 1; R <= R_max; ++R) {
            auto tree = build_tree(tdeg - 1, R, TreeCase::Unramified);
            int n = solve(assemble_unramified_steinberg(tree, true)).nullity;
            if (!rep.nullity_by_R.empty() && n > rep.nullity_by_R.back().second) rep.monotone = false;
            rep.nullity_by_R.push_back({R, n});
            if (R == R_max) rep.nullity_without_sign = solve(assemble_unramified_steinberg(tree, false)).nullity;
        }
        rep.verdict = rep.nullity_by_R.back().second == 0 ? kNotDistinguished : kCandidate;
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace distlab
