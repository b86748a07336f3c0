#pragma once

// The linear constraint system on families of local functionals (phi_s)
// over a truncated tree, its solution, and the closed-form checks.

#include <Eigen/Sparse>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "distlab/repmodels.hpp"
#include "distlab/treeorbits.hpp"

namespace distlab {

enum class RowTag {
    InvarianceS0,
    InvarianceDepth,
    Gluing,
    FrobeniusShift,
    UniformizerShift,
    JFixedness,
    CentralCharacter,
    Sign,
};
std::string to_string(RowTag tag);

struct UnknownBlock {
    int depth = 0;
    int component = 0;
    int offset = 0;
    int dim = 0;
};

struct RowBlock {
    RowTag tag;
    std::string label;
    int begin = 0;
    int count = 0;
};

struct ConstraintSystem {
    int cols = 0;
    int rows = 0;
    std::vector<Eigen::Triplet<cplx>> entries;
    std::vector<RowBlock> row_blocks;
    std::vector<UnknownBlock> blocks;
    std::vector<Component> components;  // empty for the abstract unramified model
    i64 Q = 0;
    int radius = 0;

    Eigen::SparseMatrix<cplx> matrix() const;
    int row_count(RowTag tag) const;
    int block_count(RowTag tag) const;
    const UnknownBlock& block(int depth, int component) const;
};

struct AssembleOptions {
    std::set<RowTag> drop;
    int depth_limit = -1;  // 0 keeps only the s0 conditions
};

// Ramified case. Throws CentralCharacterObstruction when chi restricted to
// the residue image of F^x is nontrivial.
ConstraintSystem assemble(const PairData& pair, const TruncatedTree& tree, const AssembleOptions& opt = {});

struct SolveResult {
    int nullity = 0;
    Vec witness;       // first null vector, empty when nullity = 0
    Mat null_basis;
    double smallest_nonzero_sv = 0;
};

SolveResult solve(const ConstraintSystem& sys, double tol = 1e-9);

struct PropagationCheck {
    bool applicable = false;
    double max_residual = 0;
    double s0_kernel_residual = 0;
    cplx C;  // phi~(delta_1) - phi~(delta_{Q+1}) at s0
    int vertices_checked = 0;
};

// (-1)^(k-1) (Q+1) / (2 Q^k)
double propagation_coefficient(i64 Q, int k);

// flip_sign replaces (-1)^(k-1) with (-1)^k in the closed form.
PropagationCheck check_propagation_formula(const ConstraintSystem& sys, const Vec& witness,
                                           const TruncatedTree& tree, bool flip_sign = false);

// Max norm of the induced-block part of the null space.
double induced_null_part(const ConstraintSystem& sys, const SolveResult& res);

extern const char* const kNotDistinguished;
extern const char* const kCandidate;

struct DistinctionReport {
    std::vector<std::pair<int, int>> nullity_by_R;
    std::string verdict;
    bool central_obstruction = false;
    bool monotone = true;
    int s0_character_bound = -1;
    Vec witness;
    std::optional<PropagationCheck> propagation;
    double induced_residual = 0;
    // unramified Steinberg: nullity with the sign row removed
    int nullity_without_sign = -1;
    double seconds = 0;
};

DistinctionReport run_distinction(const PairData& pair, int R_max, bool flip_sign = false);

// Character-sum bound on the nullity from the s0 conditions alone.
int s0_character_bound(const PairData& pair);

DistinctionReport steinberg_case(const FieldParams& params, TreeCase tree_case, int tdeg, int R_max);

// The abstract tdeg-point model for the unramified Steinberg case.
ConstraintSystem assemble_unramified_steinberg(const TruncatedTree& tree, bool with_sign_row);

struct OracleOptions {
    bool drop_equivariance = false;
};

// Dense from-scratch version of assemble + solve for R <= 1.
int brute_force_oracle(const PairData& pair, int R, const OracleOptions& opt = {});

}  // namespace distlab
