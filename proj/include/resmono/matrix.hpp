#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace resmono {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Matrix dagger(const Matrix& m) { return m.adjoint(); }

bool is_hermitian(const Matrix& m, double tol = 1e-12);

// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

// Tr sqrt(M^dag M). Hermitian input takes the eigenvalue path, anything
// else falls back to singular values.
double trace_norm(const Matrix& m);

Matrix tensor(const Matrix& a, const Matrix& b);

// Partial trace over the factors *not* listed in `keep`. `factors` gives the
// tensor decomposition of the matrix dimension, `keep` the (sorted) indices
// of factors retained in the output.
Matrix partial_trace(const Matrix& m, const std::vector<int>& factors,
                     const std::vector<int>& keep);

// Reorder tensor factors: output factor i is input factor perm[i].
Matrix permute_factors(const Matrix& m, const std::vector<int>& factors,
                       const std::vector<int>& perm);

// Partial transpose over the listed factors.
Matrix partial_transpose(const Matrix& m, const std::vector<int>& factors,
                         const std::vector<int>& transposed);

// Nearest PSD matrix in Frobenius norm (eigenvalue clipping).
Matrix project_psd(const Matrix& m);

// Frobenius-nearest Hermitian matrix X with ||X - center||_1 <= radius.
Matrix project_trace_norm_ball(const Matrix& m, const Matrix& center,
                               double radius);

}  // namespace resmono
