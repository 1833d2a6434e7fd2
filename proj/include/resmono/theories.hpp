#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resmono/qstate.hpp"

namespace resmono {

enum class TheoryKind {
    Coherence,
    Imaginarity,
    AsymmetryQubit,
    ThermalQubit,
    TotallyOrderedBall,
    PurityUnital,
    PPT,
};

std::string kind_name(TheoryKind k);

struct TheorySpec {
    TheoryKind kind = TheoryKind::Coherence;
    int dim = 2;
    double omega = 1.0;                   // AsymmetryQubit level spacing
    std::optional<DensityMatrix> gibbs;   // ThermalQubit
    double t = 0.0;                       // TotallyOrderedBall radius
    int ppt_dim_a = 2, ppt_dim_b = 2;     // PPT bipartition

    static TheorySpec coherence(int dim = 2);
    static TheorySpec imaginarity(int dim = 2);
    static TheorySpec asymmetry_qubit(double omega = 1.0);
    static TheorySpec thermal_qubit(const DensityMatrix& gibbs);
    static TheorySpec totally_ordered_ball(double t);
    static TheorySpec purity_unital(int dim = 2);
    static TheorySpec ppt(int dim_a, int dim_b);
};

// Free-set membership tolerance; below all decider tolerances so boundary
// states classify deterministically.
constexpr double kFreeTol = 1e-9;

bool is_free(const DensityMatrix& rho, const TheorySpec& th);

struct NearestFree {
    double value = 0;
    bool approximate = false;  // sampling fallback, value is an upper bound
};

NearestFree nearest_free_distance(const DensityMatrix& rho, const TheorySpec& th);

// The minimizer behind nearest_free_distance where a closed form exists.
DensityMatrix nearest_free_state(const DensityMatrix& rho, const TheorySpec& th);
bool has_nearest_free_closed_form(const TheorySpec& th);

// One affine condition on a Choi matrix, with its orthogonal projection and
// a residual measure (Frobenius norm of the violated part).
struct ChoiConstraint {
    std::string name;
    std::function<Matrix(const Matrix&)> project;
    std::function<double(const Matrix&)> residual;
};

struct ConstraintSet {
    int in_dim = 0, out_dim = 0;
    std::vector<ChoiConstraint> affine;  // includes trace preservation
    bool ppt = false;                    // extra PSD cone on the partial transpose
    std::vector<int> choi_factors;       // factorization of the Choi dimension
    std::vector<int> ppt_transposed;     // factor indices transposed for the PPT cone
};

// Complete affine description of the free operations of a theory, acting on
// channels in_dim -> out_dim. Choi convention: J = sum_ij |i><j| (x) L(|i><j|).
ConstraintSet choi_constraints(const TheorySpec& th, int in_dim, int out_dim);

}  // namespace resmono
