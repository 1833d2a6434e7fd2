#include "resmono/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace resmono {

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double trace_norm(const Matrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("trace_norm: matrix must be square");
    if (is_hermitian(m, 1e-12))
        return hermitian_eigenvalues(m).cwiseAbs().sum();
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().sum();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

namespace {

// Split a flat index into per-factor digits (most significant first).
void to_digits(long idx, const std::vector<int>& factors, std::vector<int>& out) {
    for (int k = static_cast<int>(factors.size()) - 1; k >= 0; --k) {
        out[k] = static_cast<int>(idx % factors[k]);
        idx /= factors[k];
    }
}

long from_digits(const std::vector<int>& digits, const std::vector<int>& factors) {
    long idx = 0;
    for (size_t k = 0; k < factors.size(); ++k) idx = idx * factors[k] + digits[k];
    return idx;
}

long product(const std::vector<int>& v) {
    long p = 1;
    for (int x : v) p *= x;
    return p;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const std::vector<int>& factors,
                     const std::vector<int>& keep) {
    const long dim = product(factors);
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionError("partial_trace: factor product does not match matrix");
    for (int k : keep)
        if (k < 0 || k >= static_cast<int>(factors.size()))
            throw DimensionError("partial_trace: keep index out of range");

    std::vector<int> traced;
    for (int k = 0; k < static_cast<int>(factors.size()); ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end())
            traced.push_back(k);

    std::vector<int> keep_factors, traced_factors;
    for (int k : keep) keep_factors.push_back(factors[k]);
    for (int k : traced) traced_factors.push_back(factors[k]);
    const long out_dim = product(keep_factors);
    const long tr_dim = product(traced_factors);

    Matrix out = Matrix::Zero(out_dim, out_dim);
    std::vector<int> row_digits(factors.size()), col_digits(factors.size());
    std::vector<int> kr(keep.size()), kc(keep.size()), td(traced.size());
    for (long r = 0; r < out_dim; ++r) {
        to_digits(r, keep_factors, kr);
        for (long c = 0; c < out_dim; ++c) {
            to_digits(c, keep_factors, kc);
            Complex sum = 0;
            for (long t = 0; t < tr_dim; ++t) {
                to_digits(t, traced_factors, td);
                for (size_t k = 0; k < keep.size(); ++k) {
                    row_digits[keep[k]] = kr[k];
                    col_digits[keep[k]] = kc[k];
                }
                for (size_t k = 0; k < traced.size(); ++k) {
                    row_digits[traced[k]] = td[k];
                    col_digits[traced[k]] = td[k];
                }
                sum += m(from_digits(row_digits, factors),
                         from_digits(col_digits, factors));
            }
            out(r, c) = sum;
        }
    }
    return out;
}

Matrix permute_factors(const Matrix& m, const std::vector<int>& factors,
                       const std::vector<int>& perm) {
    const long dim = product(factors);
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionError("permute_factors: factor product does not match matrix");
    std::vector<int> out_factors(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) out_factors[i] = factors[perm[i]];

    Matrix out(dim, dim);
    std::vector<int> src(factors.size()), dst(factors.size());
    std::vector<long> row_map(dim);
    for (long r = 0; r < dim; ++r) {
        to_digits(r, out_factors, dst);
        for (size_t i = 0; i < perm.size(); ++i) src[perm[i]] = dst[i];
        row_map[r] = from_digits(src, factors);
    }
    for (long r = 0; r < dim; ++r)
        for (long c = 0; c < dim; ++c) out(r, c) = m(row_map[r], row_map[c]);
    return out;
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& factors,
                         const std::vector<int>& transposed) {
    const long dim = product(factors);
    if (m.rows() != dim || m.cols() != dim)
        throw DimensionError("partial_transpose: factor product does not match matrix");
    Matrix out(dim, dim);
    std::vector<int> rd(factors.size()), cd(factors.size());
    for (long r = 0; r < dim; ++r) {
        to_digits(r, factors, rd);
        for (long c = 0; c < dim; ++c) {
            to_digits(c, factors, cd);
            std::vector<int> nr = rd, nc = cd;
            for (int k : transposed) std::swap(nr[k], nc[k]);
            out(from_digits(nr, factors), from_digits(nc, factors)) = m(r, c);
        }
    }
    return out;
}

Matrix project_psd(const Matrix& m) {
    Matrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    RealVector ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// Euclidean projection of v onto the l1 ball of the given radius.
RealVector project_l1_ball(const RealVector& v, double radius) {
    if (v.cwiseAbs().sum() <= radius) return v;
    if (radius <= 0.0) return RealVector::Zero(v.size());
    std::vector<double> u(v.data(), v.data() + v.size());
    for (auto& x : u) x = std::abs(x);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        cum += u[k];
        double t = (cum - radius) / static_cast<double>(k + 1);
        if (k + 1 == u.size() || u[k + 1] <= t) {
            theta = t;
            break;
        }
    }
    RealVector out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        double mag = std::max(std::abs(v[i]) - theta, 0.0);
        out[i] = v[i] >= 0 ? mag : -mag;
    }
    return out;
}

}  // namespace

Matrix project_trace_norm_ball(const Matrix& m, const Matrix& center,
                               double radius) {
    Matrix d = ((m - center) + (m - center).adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(d);
    RealVector ev = project_l1_ball(es.eigenvalues(), radius);
    return center + es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace resmono
