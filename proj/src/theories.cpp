#include "resmono/theories.hpp"

#include <cmath>
#include <random>

namespace resmono {

std::string kind_name(TheoryKind k) {
    switch (k) {
        case TheoryKind::Coherence: return "Coherence";
        case TheoryKind::Imaginarity: return "Imaginarity";
        case TheoryKind::AsymmetryQubit: return "AsymmetryQubit";
        case TheoryKind::ThermalQubit: return "ThermalQubit";
        case TheoryKind::TotallyOrderedBall: return "TotallyOrderedBall";
        case TheoryKind::PurityUnital: return "PurityUnital";
        case TheoryKind::PPT: return "PPT";
    }
    return "?";
}

TheorySpec TheorySpec::coherence(int dim) {
    TheorySpec s;
    s.kind = TheoryKind::Coherence;
    s.dim = dim;
    return s;
}
TheorySpec TheorySpec::imaginarity(int dim) {
    TheorySpec s;
    s.kind = TheoryKind::Imaginarity;
    s.dim = dim;
    return s;
}
TheorySpec TheorySpec::asymmetry_qubit(double omega) {
    TheorySpec s;
    s.kind = TheoryKind::AsymmetryQubit;
    s.dim = 2;
    s.omega = omega;
    return s;
}
TheorySpec TheorySpec::thermal_qubit(const DensityMatrix& gibbs) {
    if (gibbs.dim() != 2)
        throw UnsupportedError("ThermalQubit: qubit Gibbs state required");
    if (std::abs(gibbs(0, 1)) > kFreeTol)
        throw PreconditionError("ThermalQubit: Gibbs state must be diagonal");
    if (gibbs.min_eigenvalue() <= kFreeTol)
        throw PreconditionError("ThermalQubit: Gibbs state must be full rank");
    TheorySpec s;
    s.kind = TheoryKind::ThermalQubit;
    s.dim = 2;
    s.gibbs = gibbs;
    return s;
}
TheorySpec TheorySpec::totally_ordered_ball(double t) {
    if (t < 0.0 || t > 1.0)
        throw PreconditionError("TotallyOrderedBall: t must be in [0,1]");
    TheorySpec s;
    s.kind = TheoryKind::TotallyOrderedBall;
    s.dim = 2;
    s.t = t;
    return s;
}
TheorySpec TheorySpec::purity_unital(int dim) {
    TheorySpec s;
    s.kind = TheoryKind::PurityUnital;
    s.dim = dim;
    return s;
}
TheorySpec TheorySpec::ppt(int dim_a, int dim_b) {
    TheorySpec s;
    s.kind = TheoryKind::PPT;
    s.dim = dim_a * dim_b;
    s.ppt_dim_a = dim_a;
    s.ppt_dim_b = dim_b;
    return s;
}

bool is_free(const DensityMatrix& rho, const TheorySpec& th) {
    if (rho.dim() != th.dim)
        throw UnsupportedError("is_free: state dimension does not match theory");
    const Matrix& m = rho.matrix();
    switch (th.kind) {
        case TheoryKind::Coherence:
        case TheoryKind::AsymmetryQubit: {
            double off = 0;
            for (int i = 0; i < rho.dim(); ++i)
                for (int j = 0; j < rho.dim(); ++j)
                    if (i != j) off = std::max(off, std::abs(m(i, j)));
            return off <= kFreeTol;
        }
        case TheoryKind::Imaginarity: {
            double im = 0;
            for (int i = 0; i < rho.dim(); ++i)
                for (int j = 0; j < rho.dim(); ++j)
                    im = std::max(im, std::abs(m(i, j).imag()));
            return im <= kFreeTol;
        }
        case TheoryKind::ThermalQubit:
            return trace_distance(rho, *th.gibbs) <= kFreeTol;
        case TheoryKind::TotallyOrderedBall:
            return bloch_from_density(rho).norm() <= th.t + kFreeTol;
        case TheoryKind::PurityUnital: {
            Matrix mm = Matrix::Identity(rho.dim(), rho.dim()) / rho.dim();
            return trace_norm(m - mm) <= kFreeTol;
        }
        case TheoryKind::PPT: {
            Matrix pt = partial_transpose(m, {th.ppt_dim_a, th.ppt_dim_b}, {1});
            return hermitian_eigenvalues(pt).minCoeff() >= -kFreeTol;
        }
    }
    throw UnsupportedError("is_free: unknown theory kind");
}

bool has_nearest_free_closed_form(const TheorySpec& th) {
    switch (th.kind) {
        case TheoryKind::Coherence:
        case TheoryKind::Imaginarity:
        case TheoryKind::AsymmetryQubit:
            return th.dim == 2;
        case TheoryKind::ThermalQubit:
        case TheoryKind::TotallyOrderedBall:
            return true;
        case TheoryKind::PurityUnital:
            return true;
        case TheoryKind::PPT:
            return false;
    }
    return false;
}

DensityMatrix nearest_free_state(const DensityMatrix& rho, const TheorySpec& th) {
    if (!has_nearest_free_closed_form(th))
        throw UnsupportedError("nearest_free_state: no closed form for this theory");
    switch (th.kind) {
        case TheoryKind::Coherence:
        case TheoryKind::AsymmetryQubit:
            return dephase(rho);
        case TheoryKind::Imaginarity: {
            Matrix re = rho.matrix().real().cast<Complex>();
            return DensityMatrix(re, rho.factors());
        }
        case TheoryKind::ThermalQubit:
            return *th.gibbs;
        case TheoryKind::TotallyOrderedBall: {
            BlochVector r = bloch_from_density(rho);
            double n = r.norm();
            if (n <= th.t) return rho;
            double s = th.t / n;
            return density_from_bloch({r.x * s, r.y * s, r.z * s});
        }
        case TheoryKind::PurityUnital:
            return DensityMatrix(Matrix::Identity(rho.dim(), rho.dim()) / rho.dim());
        default:
            throw UnsupportedError("nearest_free_state: unsupported theory");
    }
}

NearestFree nearest_free_distance(const DensityMatrix& rho, const TheorySpec& th) {
    if (rho.dim() != th.dim)
        throw UnsupportedError("nearest_free_distance: dimension mismatch");
    if (has_nearest_free_closed_form(th))
        return {trace_distance(rho, nearest_free_state(rho, th)), false};

    // Sampling fallback: best of N random free states, reported as an upper
    // bound with the approximate flag set.
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double best = is_free(rho, th) ? 0.0 : 2.0;
    const int d = rho.dim();
    for (int trial = 0; trial < 4000 && best > 0; ++trial) {
        Matrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        Matrix cand = g * g.adjoint();
        cand /= cand.trace().real();
        DensityMatrix mu(cand);
        if (!is_free(mu, th)) continue;
        best = std::min(best, trace_distance(rho, mu));
    }
    return {best, true};
}

namespace {

constexpr int kMaxChoiDim = 4096;

Matrix trace_out(const Matrix& j, int in_dim, int out_dim) {
    return partial_trace(j, {in_dim, out_dim}, {0});
}
Matrix trace_in(const Matrix& j, int in_dim, int out_dim) {
    return partial_trace(j, {in_dim, out_dim}, {1});
}

ChoiConstraint trace_preserving_constraint(int in_dim, int out_dim) {
    return {
        "trace_preserving",
        [=](const Matrix& j) -> Matrix {
            Matrix r = trace_out(j, in_dim, out_dim) -
                       Matrix::Identity(in_dim, in_dim);
            return j - tensor(r / out_dim, Matrix::Identity(out_dim, out_dim));
        },
        [=](const Matrix& j) {
            return (trace_out(j, in_dim, out_dim) -
                    Matrix::Identity(in_dim, in_dim))
                .norm();
        },
    };
}

ChoiConstraint unital_constraint(int in_dim, int out_dim) {
    return {
        "unital",
        [=](const Matrix& j) -> Matrix {
            Matrix r = trace_in(j, in_dim, out_dim) -
                       Matrix::Identity(out_dim, out_dim);
            return j - tensor(Matrix::Identity(in_dim, in_dim) / in_dim, r);
        },
        [=](const Matrix& j) {
            return (trace_in(j, in_dim, out_dim) -
                    Matrix::Identity(out_dim, out_dim))
                .norm();
        },
    };
}

// mask(i,a,j,b) == true means the Choi entry ((i,a),(j,b)) must vanish.
ChoiConstraint zero_pattern_constraint(std::string name, int in_dim, int out_dim,
                                       std::function<bool(int, int, int, int)> mask) {
    auto apply = [=](const Matrix& j, bool zero_out) {
        Matrix out = zero_out ? j : Matrix(j);
        double res = 0;
        for (int i = 0; i < in_dim; ++i)
            for (int a = 0; a < out_dim; ++a)
                for (int jj = 0; jj < in_dim; ++jj)
                    for (int b = 0; b < out_dim; ++b)
                        if (mask(i, a, jj, b)) {
                            int r = i * out_dim + a, c = jj * out_dim + b;
                            res = std::max(res, std::abs(j(r, c)));
                            if (zero_out) out(r, c) = 0;
                        }
        return std::pair<Matrix, double>(out, res);
    };
    return {
        std::move(name),
        [=](const Matrix& j) { return apply(j, true).first; },
        [=](const Matrix& j) { return apply(j, false).second; },
    };
}

ChoiConstraint real_choi_constraint() {
    return {
        "real_choi",
        [](const Matrix& j) { return Matrix(j.real().cast<Complex>()); },
        [](const Matrix& j) { return j.imag().norm(); },
    };
}

ChoiConstraint gibbs_fixed_point_constraint(const DensityMatrix& gibbs, int in_dim,
                                            int out_dim) {
    Matrix g_t = gibbs.matrix().transpose();
    double c = (g_t * g_t).trace().real();
    Matrix target = gibbs.matrix();
    return {
        "gibbs_fixed_point",
        [=](const Matrix& j) -> Matrix {
            Matrix img = partial_trace(tensor(g_t, Matrix::Identity(out_dim, out_dim)) * j,
                                       {in_dim, out_dim}, {1});
            return j - tensor(g_t, (img - target) / c);
        },
        [=](const Matrix& j) {
            Matrix img = partial_trace(tensor(g_t, Matrix::Identity(out_dim, out_dim)) * j,
                                       {in_dim, out_dim}, {1});
            return (img - target).norm();
        },
    };
}

}  // namespace

ConstraintSet choi_constraints(const TheorySpec& th, int in_dim, int out_dim) {
    if (in_dim < 1 || out_dim < 1 || in_dim * out_dim > kMaxChoiDim)
        throw UnsupportedError("choi_constraints: Choi dimension out of range");

    ConstraintSet cs;
    cs.in_dim = in_dim;
    cs.out_dim = out_dim;
    cs.choi_factors = {in_dim, out_dim};
    cs.affine.push_back(trace_preserving_constraint(in_dim, out_dim));

    switch (th.kind) {
        case TheoryKind::Coherence:
            // Dephasing covariance: L(|i><j|) has no diagonal for i != j and
            // is diagonal for i == j.
            cs.affine.push_back(zero_pattern_constraint(
                "dephasing_covariant", in_dim, out_dim,
                [](int i, int a, int j, int b) {
                    return (i != j && a == b) || (i == j && a != b);
                }));
            break;
        case TheoryKind::Imaginarity:
            cs.affine.push_back(real_choi_constraint());
            break;
        case TheoryKind::AsymmetryQubit:
            if (in_dim != 2 || out_dim != 2)
                throw UnsupportedError("choi_constraints: asymmetry is qubit-only");
            // Nondegenerate-Hamiltonian U(1) covariance forces energy-sector
            // block structure; entries survive only when i - a == j - b.
            cs.affine.push_back(zero_pattern_constraint(
                "phase_covariant", in_dim, out_dim,
                [](int i, int a, int j, int b) { return i - a != j - b; }));
            break;
        case TheoryKind::ThermalQubit:
            if (in_dim != 2 || out_dim != 2)
                throw UnsupportedError("choi_constraints: thermal is qubit-only");
            cs.affine.push_back(zero_pattern_constraint(
                "phase_covariant", in_dim, out_dim,
                [](int i, int a, int j, int b) { return i - a != j - b; }));
            cs.affine.push_back(gibbs_fixed_point_constraint(*th.gibbs, in_dim, out_dim));
            break;
        case TheoryKind::TotallyOrderedBall:
        case TheoryKind::PurityUnital:
            if (in_dim != out_dim)
                throw UnsupportedError("choi_constraints: unital needs in_dim == out_dim");
            cs.affine.push_back(unital_constraint(in_dim, out_dim));
            break;
        case TheoryKind::PPT: {
            int da = th.ppt_dim_a, db = th.ppt_dim_b;
            if (in_dim != da * db || out_dim != da * db)
                throw UnsupportedError("choi_constraints: PPT dims mismatch");
            cs.ppt = true;
            cs.choi_factors = {da, db, da, db};
            cs.ppt_transposed = {1, 3};
            break;
        }
    }
    return cs;
}

}  // namespace resmono
