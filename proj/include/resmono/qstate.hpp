#pragma once

#include <random>
#include <utility>
#include <vector>

#include "resmono/matrix.hpp"

namespace resmono {

// Tolerances used when validating states at construction.
constexpr double kHermitianTol = 1e-12;
constexpr double kStateTol = 1e-10;

struct BlochVector {
    double x = 0, y = 0, z = 0;
    double norm() const;
};

class PureState {
public:
    explicit PureState(Vector amplitudes);
    const Vector& amplitudes() const { return amps_; }
    int dim() const { return static_cast<int>(amps_.size()); }
    Matrix projector() const { return amps_ * amps_.adjoint(); }

private:
    Vector amps_;
};

// Trace-one PSD matrix plus the tensor factorization of its dimension.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m, std::vector<int> factors = {});
    DensityMatrix(const PureState& psi, std::vector<int> factors = {});

    const Matrix& matrix() const { return m_; }
    const std::vector<int>& factors() const { return factors_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    bool is_qubit() const { return dim() == 2; }

    Complex operator()(int i, int j) const { return m_(i, j); }

    // Smallest eigenvalue; > 0 means full rank.
    double min_eigenvalue() const;

private:
    Matrix m_;
    std::vector<int> factors_;
};

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& r);

// Kill off-diagonal elements in the given basis (columns = basis vectors).
// Defaults to the computational basis.
DensityMatrix dephase(const DensityMatrix& rho);
DensityMatrix dephase(const DensityMatrix& rho, const Matrix& basis);

// -sum lambda log2 lambda, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// rho = p_min psi + (1 - p_min) sigma with p_min the smallest eigenvalue of
// rho. Requires rho full rank.
std::pair<double, DensityMatrix> decompose_full_rank(const DensityMatrix& rho,
                                                     const PureState& psi);

// Hilbert-Schmidt style random state (Wishart, normalized).
DensityMatrix random_density_matrix(int dim, std::mt19937_64& rng);
// Uniform over the Bloch ball.
DensityMatrix random_qubit_state(std::mt19937_64& rng);
PureState random_pure_state(int dim, std::mt19937_64& rng);

}  // namespace resmono
