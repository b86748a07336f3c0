#pragma once

// Truncated Bruhat-Tits tree of GL_2(Delta) with a P^1 chart at every
// vertex. The orbit structure under D^x is an axiom of the model.

#include <ostream>
#include <vector>

#include "distlab/gl2fq.hpp"

namespace distlab {

enum class TreeCase { Ramified, Unramified };

struct TreeVertex {
    int id = 0;
    int parent = -1;
    int depth = 0;
    int parent_droite = -1;   // droite of the edge in the parent's chart
    int branch = -1;          // child index of the depth-1 ancestor; -1 at s0
    std::vector<int> chart;   // droite index -> neighbour id, -1 for a virtual edge
};

class TruncatedTree {
public:
    // Parent droite at every vertex other than s0.
    static constexpr int kParentDroite = -2;

    int degree() const { return degree_; }
    int radius() const { return radius_; }
    i64 Q() const { return Q_; }
    TreeCase tree_case() const { return case_; }
    int root() const { return 0; }
    int s1() const { return s1_; }
    int size() const { return static_cast<int>(v_.size()); }
    const TreeVertex& vertex(int id) const { return v_[id]; }
    const std::vector<TreeVertex>& vertices() const { return v_; }

    // droite at s0 toward s1, and the parent droite elsewhere
    int root_droite_to_s1() const { return 0; }
    int parent_droite_index() const { return static_cast<int>(Q_); }
    // children droites of a depth >= 1 vertex, in chart order
    const std::vector<int>& child_droites() const { return child_droites_; }
    // droites at s0 in chart order; the first one points to s1
    const std::vector<int>& root_droites() const { return root_droites_; }

    bool is_virtual(int id, int droite) const { return v_[id].chart[droite] < 0; }
    int distance(int s, int t) const;
    std::vector<int> geodesic(int s, int t) const;
    // first vertex at the given depth along the descendants of s (chart order)
    int first_at_depth(int depth) const;

    void export_edges(std::ostream& os) const;

private:
    friend TruncatedTree build_tree(i64 Q, int R, TreeCase tree_case);

    int degree_ = 0;
    int radius_ = 0;
    i64 Q_ = 0;
    TreeCase case_ = TreeCase::Ramified;
    int s1_ = -1;
    std::vector<int> root_droites_;
    std::vector<int> child_droites_;
    std::vector<TreeVertex> v_;
};

i64 tree_vertex_count(i64 Q, int R);
TruncatedTree build_tree(i64 Q, int R, TreeCase tree_case);

// Ramified: sphere about s0 of radius `twice_radius / 2`. Unramified:
// sphere about the midpoint m0 of {s0, s1}; twice_radius is odd.
struct OrbitClass {
    TreeCase tree_case = TreeCase::Ramified;
    int twice_radius = 0;
    bool integral_units_suffice = false;  // spheres are O_D^x-orbits
    bool operator==(const OrbitClass& o) const {
        return tree_case == o.tree_case && twice_radius == o.twice_radius;
    }
};

OrbitClass orbit_of(const TruncatedTree& tree, int vertex, TreeCase tree_case);

}  // namespace distlab
