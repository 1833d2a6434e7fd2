#include "resmono/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace resmono {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (std::abs(amps_.norm() - 1.0) > 1e-12)
        throw InvalidStateError("PureState: amplitudes must have unit norm");
}

DensityMatrix::DensityMatrix(Matrix m, std::vector<int> factors)
    : m_(std::move(m)), factors_(std::move(factors)) {
    if (m_.rows() != m_.cols())
        throw DimensionError("DensityMatrix: matrix must be square");
    if (factors_.empty()) factors_ = {static_cast<int>(m_.rows())};
    long prod = 1;
    for (int f : factors_) prod *= f;
    if (prod != m_.rows())
        throw DimensionError("DensityMatrix: factor product does not match dimension");
    if (!is_hermitian(m_, kHermitianTol * std::max<double>(1.0, m_.rows())))
        throw InvalidStateError("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > kStateTol ||
        std::abs(m_.trace().imag()) > kStateTol)
        throw InvalidStateError("DensityMatrix: trace must be one");
    if (hermitian_eigenvalues(m_).minCoeff() < -kStateTol)
        throw InvalidStateError("DensityMatrix: negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& psi, std::vector<int> factors)
    : DensityMatrix(psi.projector(), std::move(factors)) {}

double DensityMatrix::min_eigenvalue() const {
    return hermitian_eigenvalues(m_).minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_norm(a.matrix() - b.matrix());
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
    if (!rho.is_qubit())
        throw DimensionError("bloch_from_density: qubit states only");
    const Matrix& m = rho.matrix();
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(),
            (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
    if (r.norm() > 1.0 + kStateTol)
        throw InvalidStateError("density_from_bloch: Bloch vector outside the sphere");
    Matrix m(2, 2);
    m(0, 0) = (1.0 + r.z) / 2.0;
    m(1, 1) = (1.0 - r.z) / 2.0;
    m(0, 1) = Complex(r.x, -r.y) / 2.0;
    m(1, 0) = Complex(r.x, r.y) / 2.0;
    // Clip roundoff when |r| = 1 to machine precision.
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.eigenvalues().minCoeff() < 0) {
        RealVector ev = es.eigenvalues().cwiseMax(0.0);
        ev /= ev.sum();
        m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }
    return DensityMatrix(m);
}

DensityMatrix dephase(const DensityMatrix& rho) {
    Matrix m = rho.matrix().diagonal().asDiagonal();
    return DensityMatrix(m, rho.factors());
}

DensityMatrix dephase(const DensityMatrix& rho, const Matrix& basis) {
    if (basis.rows() != rho.dim() || basis.cols() != rho.dim())
        throw DimensionError("dephase: basis dimension mismatch");
    Matrix in_basis = basis.adjoint() * rho.matrix() * basis;
    Matrix diag = in_basis.diagonal().asDiagonal();
    return DensityMatrix(basis * diag * basis.adjoint(), rho.factors());
}

double von_neumann_entropy(const DensityMatrix& rho) {
    RealVector ev = hermitian_eigenvalues(rho.matrix());
    double s = 0;
    for (double l : ev)
        if (l > 1e-15) s -= l * std::log2(l);
    return std::max(s, 0.0);
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> factors = a.factors();
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    return DensityMatrix(tensor(a.matrix(), b.matrix()), factors);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    Matrix out = partial_trace(rho.matrix(), rho.factors(), keep);
    std::vector<int> factors;
    for (int k : keep) factors.push_back(rho.factors()[k]);
    // Symmetrize roundoff before revalidation.
    Matrix h = (out + out.adjoint()) / 2.0;
    return DensityMatrix(h, factors);
}

DensityMatrix random_density_matrix(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix m = g * g.adjoint();
    return DensityMatrix(m / m.trace().real());
}

DensityMatrix random_qubit_state(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    double n = std::sqrt(x * x + y * y + z * z);
    if (n < 1e-12) return density_from_bloch({0, 0, 0});
    double r = std::cbrt(unif(rng));
    return density_from_bloch({r * x / n, r * y / n, r * z / n});
}

PureState random_pure_state(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    return PureState(v / v.norm());
}

std::pair<double, DensityMatrix> decompose_full_rank(const DensityMatrix& rho,
                                                     const PureState& psi) {
    if (psi.dim() != rho.dim())
        throw DimensionError("decompose_full_rank: dimension mismatch");
    double p_min = rho.min_eigenvalue();
    if (p_min <= 1e-9)
        throw PreconditionError("decompose_full_rank: state must be full rank");
    Matrix sigma = (rho.matrix() - p_min * psi.projector()) / (1.0 - p_min);
    return {p_min, DensityMatrix(project_psd(sigma) / project_psd(sigma).trace().real(),
                                 rho.factors())};
}

}  // namespace resmono
