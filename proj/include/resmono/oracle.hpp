#pragma once

#include <random>
#include <string>
#include <vector>

#include "resmono/theories.hpp"

namespace resmono {

// Choi representation of a channel, J = sum_ij |i><j| (x) L(|i><j|).
struct ChoiMatrix {
    Matrix m;
    int in_dim = 0, out_dim = 0;
};

ChoiMatrix identity_choi(int dim);
ChoiMatrix replacement_choi(const DensityMatrix& mu, int in_dim);
ChoiMatrix choi_from_kraus(const std::vector<Matrix>& kraus, int in_dim, int out_dim);

// L(rho) = Tr_in[(rho^T (x) I) J].
Matrix apply_choi_raw(const Matrix& j, const Matrix& rho, int in_dim, int out_dim);
DensityMatrix apply_choi(const ChoiMatrix& j, const DensityMatrix& rho);

struct ConstraintResidual {
    std::string name;
    double residual = 0;
};

std::vector<ConstraintResidual> verify_channel(const ChoiMatrix& j,
                                               const TheorySpec& th);
std::vector<ConstraintResidual> verify_channel(const ChoiMatrix& j,
                                               const ConstraintSet& cs);
double max_residual(const std::vector<ConstraintResidual>& residuals);

struct OracleBudget {
    int max_iters = 1500;      // Dykstra iterations per bisection level
    int restarts = 8;
    double tol = 1e-7;         // constraint residual tolerance
    int bisection_depth = 30;  // on the target radius r in [0, 2]
    unsigned seed = 0;
};

struct OracleResult {
    double residual = 0;
    ChoiMatrix choi;
    long iterations = 0;
    bool converged = false;
    int restarts_used = 0;
};

// Minimize || apply_choi(J, rho) - sigma ||_1 over the feasible Choi set of
// the theory. Bisection on the target radius; Dykstra alternating
// projections (PSD cone, affine constraints, output trace-norm ball) decide
// feasibility at each radius. Affirms only; infeasibility is never certified.
OracleResult min_residual(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const TheorySpec& th, const OracleBudget& budget = {});

// Dykstra projection of an arbitrary Choi matrix onto the feasible set
// (PSD + affine constraints, no output target).
ChoiMatrix project_to_free(const ChoiMatrix& j, const ConstraintSet& cs,
                           int max_iters = 2000, double tol = 1e-12);

// Random feasible channel of a theory, for sampled-monotonicity checks.
ChoiMatrix sample_free_channel(const TheorySpec& th, int dim, std::mt19937_64& rng);

// Machine-exact repair of a near-feasible dephasing-covariant channel:
// enforce the zero pattern, then trace preservation, then clip tiny negative
// eigenvalues, iterated until all residuals are below tol.
ChoiMatrix repair_dio_exact(const ChoiMatrix& j, double tol = 1e-13);

}  // namespace resmono
