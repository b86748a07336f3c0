#pragma once

#include <memory>
#include <vector>

#include "distlab/ffchar.hpp"

namespace distlab {

struct Gl2Element {
    i64 a = 1, b = 0, c = 0, d = 1;
    bool operator==(const Gl2Element& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

// (x:y) with the first nonzero coordinate equal to 1.
struct ProjPoint {
    i64 x = 1, y = 0;
    bool operator==(const ProjPoint& o) const { return x == o.x && y == o.y; }
};

// g = b, or g = diag(t1,t2) * [[1,u1],[0,1]] * w * [[1,u2],[0,1]]
struct Bruhat {
    bool in_borel = false;
    Gl2Element b;
    i64 t1 = 1, t2 = 1, u1 = 0, u2 = 0;
};

class Gl2Fq {
public:
    explicit Gl2Fq(i64 Q);

    const FiniteField& field() const { return *F_; }
    std::shared_ptr<const FiniteField> field_ptr() const { return F_; }
    i64 Q() const { return Q_; }
    i64 order() const { return (Q_ * Q_ - 1) * (Q_ * Q_ - Q_); }

    Gl2Element mul(const Gl2Element& x, const Gl2Element& y) const;
    Gl2Element inv(const Gl2Element& x) const;
    Gl2Element pow(Gl2Element x, i64 e) const;
    i64 det(const Gl2Element& x) const;
    Gl2Element scalar(i64 z) const { return {z, 0, 0, z}; }
    Gl2Element w() const { return {0, 1, 1, 0}; }
    Gl2Element upper_unipotent(i64 x) const { return {1, x, 0, 1}; }
    Gl2Element diag(i64 t1, i64 t2) const { return {t1, 0, 0, t2}; }
    Gl2Element frobenius(const Gl2Element& x, i64 power_of_p) const;
    bool is_upper(const Gl2Element& x) const { return x.c == 0; }
    bool is_scalar(const Gl2Element& x) const { return x.b == 0 && x.c == 0 && x.a == x.d; }

    // P^1 indexing: (1:y) -> code of y, (0:1) -> Q.
    int num_points() const { return static_cast<int>(Q_ + 1); }
    ProjPoint normalize(i64 x, i64 y) const;
    int index(const ProjPoint& pt) const { return pt.x == 0 ? static_cast<int>(Q_) : static_cast<int>(pt.y); }
    ProjPoint point(int idx) const { return idx == Q_ ? ProjPoint{0, 1} : ProjPoint{1, idx}; }
    int act(const Gl2Element& g, int idx) const;

    // Right cosets B\G are indexed by the P^1 point of the bottom row.
    int bottom_row_index(const Gl2Element& g) const { return index(normalize(g.c, g.d)); }
    Gl2Element coset_rep(int idx) const;
    // an element sending the base droite (1:0) to idx
    Gl2Element moving_base_to(int idx) const;

    Bruhat bruhat_decompose(const Gl2Element& g) const;
    std::vector<Gl2Element> all_elements() const;
    std::vector<Gl2Element> borel_elements() const;

private:
    std::shared_ptr<const FiniteField> F_;
    i64 Q_;
};

// Image of k_D^x: [[x, a2*y],[y, x]] with a2 = g the generator of F_Q^x.
class NonsplitTorus {
public:
    explicit NonsplitTorus(const Gl2Fq& G);

    i64 alpha_sq() const { return alpha_sq_; }
    Gl2Element element(i64 x, i64 y) const { return {x, G_->field().mul(alpha_sq_, y), y, x}; }
    std::vector<Gl2Element> elements() const;
    // identity, then [[x, a2],[1, x]] for x in code order
    std::vector<Gl2Element> coset_reps() const;
    // coset reps with square-norm classes first (identity leading)
    std::vector<Gl2Element> chart_reps(i64 q) const;
    Gl2Element generator() const { return generator_; }

private:
    const Gl2Fq* G_;
    i64 alpha_sq_;
    Gl2Element generator_;
};

struct TransitivityResult {
    bool simply_transitive = false;
    int orbit_size = 0;
    bool stabilizer_is_center = false;
    std::vector<int> coset_of_point;  // point index -> coset rep index
};

TransitivityResult torus_acts_simply_transitively(i64 Q);
int norm_to_k_square_class(const Gl2Fq& G, const Gl2Element& torus_elt, i64 q);
int count_square_norm_cosets(i64 Q, i64 q);

// K_s = { u [[1,0],[w,1]] }
std::vector<Gl2Element> mirabolic_elements(const Gl2Fq& G);
std::vector<Gl2Element> mirabolic_generators(const Gl2Fq& G);

}  // namespace distlab
