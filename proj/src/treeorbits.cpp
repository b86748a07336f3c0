#include "distlab/treeorbits.hpp"

#include <algorithm>

namespace distlab {

i64 tree_vertex_count(i64 Q, int R) {
    i64 layer = 1, total = 1;
    for (int j = 0; j < R; ++j) {
        total += (Q + 1) * layer;
        layer *= Q;
        if (total > (i64{1} << 40)) break;
    }
    return total;
}

TruncatedTree build_tree(i64 Q, int R, TreeCase tree_case) {
    if (R < 1) throw ConfigError("tree radius must be >= 1");
    if (Q < 2) throw ConfigError("tree degree must be >= 3");
    if (tree_vertex_count(Q, R) > 1000000) throw SizeCap("truncated tree exceeds 10^6 vertices");

    TruncatedTree t;
    t.degree_ = static_cast<int>(Q + 1);
    t.radius_ = R;
    t.Q_ = Q;
    t.case_ = tree_case;

    // Chart order: at s0 the torus coset reps applied to the base droite;
    // deeper, the same order with the parent droite removed.
    if (prime_power(Q).first != 0) {
        Gl2Fq G(Q);
        NonsplitTorus T(G);
        for (const auto& r : T.chart_reps(prime_power(Q).first)) t.root_droites_.push_back(G.act(r, 0));
    } else {
        for (int i = 0; i <= Q; ++i) t.root_droites_.push_back(i);
    }
    for (int d : t.root_droites_)
        if (d != Q) t.child_droites_.push_back(d);

    t.v_.reserve(static_cast<std::size_t>(tree_vertex_count(Q, R)));
    TreeVertex root;
    root.chart.assign(Q + 1, -1);
    t.v_.push_back(root);
    std::vector<int> frontier{0};
    for (int depth = 1; depth <= R; ++depth) {
        std::vector<int> next;
        for (int pid : frontier) {
            const auto& droites = pid == 0 ? t.root_droites_ : t.child_droites_;
            for (std::size_t i = 0; i < droites.size(); ++i) {
                TreeVertex v;
                v.id = static_cast<int>(t.v_.size());
                v.parent = pid;
                v.depth = depth;
                v.parent_droite = droites[i];
                v.branch = pid == 0 ? static_cast<int>(i) : t.v_[pid].branch;
                v.chart.assign(Q + 1, -1);
                v.chart[Q] = pid;
                t.v_[pid].chart[droites[i]] = v.id;
                next.push_back(v.id);
                t.v_.push_back(std::move(v));
            }
        }
        frontier = std::move(next);
    }
    t.s1_ = t.v_[0].chart[t.root_droites_[0]];
    return t;
}

std::vector<int> TruncatedTree::geodesic(int s, int t) const {
    std::vector<int> up, down;
    while (v_[s].depth > v_[t].depth) up.push_back(s), s = v_[s].parent;
    while (v_[t].depth > v_[s].depth) down.push_back(t), t = v_[t].parent;
    while (s != t) {
        up.push_back(s), s = v_[s].parent;
        down.push_back(t), t = v_[t].parent;
    }
    up.push_back(s);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

int TruncatedTree::distance(int s, int t) const { return static_cast<int>(geodesic(s, t).size()) - 1; }

int TruncatedTree::first_at_depth(int depth) const {
    int s = 0;
    for (int k = 0; k < depth; ++k) {
        const auto& droites = s == 0 ? root_droites_ : child_droites_;
        s = v_[s].chart[droites[0]];
    }
    return s;
}

void TruncatedTree::export_edges(std::ostream& os) const {
    for (const auto& v : v_)
        if (v.parent >= 0) os << v.parent << ' ' << v.id << ' ' << v.parent_droite << '\n';
}

OrbitClass orbit_of(const TruncatedTree& tree, int vertex, TreeCase tree_case) {
    const auto& v = tree.vertex(vertex);
    OrbitClass c;
    c.tree_case = tree_case;
    if (tree_case == TreeCase::Ramified) {
        c.twice_radius = 2 * v.depth;
        c.integral_units_suffice = true;
    } else {
        bool toward_s1 = v.depth >= 1 && v.branch == 0;
        c.twice_radius = toward_s1 ? 2 * v.depth - 1 : 2 * v.depth + 1;
    }
    return c;
}

}  // namespace distlab
