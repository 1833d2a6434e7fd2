#include "resmono/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace resmono {

ChoiMatrix identity_choi(int dim) {
    Matrix j = Matrix::Zero(dim * dim, dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) j(i * dim + i, k * dim + k) = 1.0;
    return {j, dim, dim};
}

ChoiMatrix replacement_choi(const DensityMatrix& mu, int in_dim) {
    return {tensor(Matrix::Identity(in_dim, in_dim), mu.matrix()), in_dim,
            mu.dim()};
}

ChoiMatrix choi_from_kraus(const std::vector<Matrix>& kraus, int in_dim,
                           int out_dim) {
    Matrix j = Matrix::Zero(in_dim * out_dim, in_dim * out_dim);
    for (const Matrix& k : kraus) {
        if (k.rows() != out_dim || k.cols() != in_dim)
            throw DimensionError("choi_from_kraus: Kraus operator shape mismatch");
        for (int i = 0; i < in_dim; ++i)
            for (int jj = 0; jj < in_dim; ++jj) {
                // block (i, jj) += K |i><jj| K^dag = K.col(i) K.col(jj)^dag
                for (int a = 0; a < out_dim; ++a)
                    for (int b = 0; b < out_dim; ++b)
                        j(i * out_dim + a, jj * out_dim + b) +=
                            k(a, i) * std::conj(k(b, jj));
            }
    }
    return {j, in_dim, out_dim};
}

Matrix apply_choi_raw(const Matrix& j, const Matrix& rho, int in_dim, int out_dim) {
    Matrix y = Matrix::Zero(out_dim, out_dim);
    for (int k = 0; k < in_dim; ++k)
        for (int i = 0; i < in_dim; ++i) {
            Complex w = rho(k, i);
            if (w == Complex(0, 0)) continue;
            for (int a = 0; a < out_dim; ++a)
                for (int b = 0; b < out_dim; ++b)
                    y(a, b) += w * j(k * out_dim + a, i * out_dim + b);
        }
    return y;
}

DensityMatrix apply_choi(const ChoiMatrix& j, const DensityMatrix& rho) {
    if (rho.dim() != j.in_dim)
        throw DimensionError("apply_choi: input dimension mismatch");
    Matrix y = apply_choi_raw(j.m, rho.matrix(), j.in_dim, j.out_dim);
    y = (y + y.adjoint()) / 2.0;
    double tr = y.trace().real();
    if (std::abs(tr - 1.0) > 1e-6)
        throw InvalidStateError("apply_choi: channel is far from trace preserving");
    return DensityMatrix(y / tr);
}

std::vector<ConstraintResidual> verify_channel(const ChoiMatrix& j,
                                               const ConstraintSet& cs) {
    std::vector<ConstraintResidual> out;
    double neg = hermitian_eigenvalues(j.m).minCoeff();
    out.push_back({"psd", std::max(0.0, -neg)});
    if (cs.ppt) {
        Matrix pt = partial_transpose(j.m, cs.choi_factors, cs.ppt_transposed);
        out.push_back({"ppt", std::max(0.0, -hermitian_eigenvalues(pt).minCoeff())});
    }
    for (const auto& c : cs.affine) out.push_back({c.name, c.residual(j.m)});
    return out;
}

std::vector<ConstraintResidual> verify_channel(const ChoiMatrix& j,
                                               const TheorySpec& th) {
    return verify_channel(j, choi_constraints(th, j.in_dim, j.out_dim));
}

double max_residual(const std::vector<ConstraintResidual>& residuals) {
    double m = 0;
    for (const auto& r : residuals) m = std::max(m, r.residual);
    return m;
}

namespace {

Matrix ppt_project(const Matrix& j, const ConstraintSet& cs) {
    Matrix pt = partial_transpose(j, cs.choi_factors, cs.ppt_transposed);
    return partial_transpose(project_psd(pt), cs.choi_factors, cs.ppt_transposed);
}

// Dykstra state over the joint variable (J, Y). Sets acting only on J keep a
// zero Y correction and vice versa.
struct JointProjection {
    std::function<void(Matrix& j, Matrix& y)> apply;
};

struct FeasibilityResult {
    bool feasible = false;
    Matrix j;
    double constraint_residual = 0;  // at the returned point
    long cycles = 0;
};

class DykstraSolver {
public:
    DykstraSolver(const ConstraintSet& cs, const Matrix& rho_in,
                  const Matrix& sigma_target)
        : cs_(cs), rho_(rho_in), sigma_(sigma_target) {
        purity_ = (rho_ * rho_).trace().real();
        rho_t_ = rho_.transpose();
    }

    Matrix apply(const Matrix& j) const {
        return apply_choi_raw(j, rho_, cs_.in_dim, cs_.out_dim);
    }

    // Constraint residuals (no ball) at J.
    double residual_at(const Matrix& j) const {
        double m = std::max(0.0, -hermitian_eigenvalues(j).minCoeff());
        if (cs_.ppt) {
            Matrix pt = partial_transpose(j, cs_.choi_factors, cs_.ppt_transposed);
            m = std::max(m, std::max(0.0, -hermitian_eigenvalues(pt).minCoeff()));
        }
        for (const auto& c : cs_.affine) m = std::max(m, c.residual(j));
        return m;
    }

    // Find a point in PSD (^ PPT) ^ affine (^ ||L(J) - sigma||_1 <= r when
    // with_ball). Returns the best iterate seen.
    FeasibilityResult run(Matrix j, double r, bool with_ball, int max_iters,
                          double tol) const {
        const Eigen::Index D = j.rows();
        Matrix y = apply(j);

        std::vector<JointProjection> sets;
        sets.push_back({[this](Matrix& jj, Matrix&) { jj = project_psd(jj); }});
        if (cs_.ppt)
            sets.push_back({[this](Matrix& jj, Matrix&) { jj = ppt_project(jj, cs_); }});
        for (const auto& c : cs_.affine)
            sets.push_back({[&c](Matrix& jj, Matrix&) { jj = c.project(jj); }});
        if (with_ball) {
            // Coupling set {Y = L(J)}; exact projection since L L* is scalar.
            sets.push_back({[this](Matrix& jj, Matrix& yy) {
                Matrix corr = (apply(jj) - yy) / (1.0 + purity_);
                jj -= tensor(rho_t_, corr);
                yy += corr;
            }});
            sets.push_back({[this, r](Matrix&, Matrix& yy) {
                yy = project_trace_norm_ball(yy, sigma_, r);
            }});
        }

        std::vector<Matrix> corr_j(sets.size(), Matrix::Zero(D, D));
        std::vector<Matrix> corr_y(sets.size(),
                                   Matrix::Zero(cs_.out_dim, cs_.out_dim));

        FeasibilityResult best;
        best.j = j;
        best.constraint_residual = combined_residual(j, r, with_ball);
        double last_improved_at = best.constraint_residual;
        int stale_checks = 0;
        const int check_every = 20;

        for (int it = 0; it < max_iters; ++it) {
            for (size_t s = 0; s < sets.size(); ++s) {
                Matrix pj = j + corr_j[s];
                Matrix py = y + corr_y[s];
                Matrix nj = pj, ny = py;
                sets[s].apply(nj, ny);
                corr_j[s] = pj - nj;
                corr_y[s] = py - ny;
                j = nj;
                y = ny;
            }
            if ((it + 1) % check_every == 0 || it + 1 == max_iters) {
                double res = combined_residual(j, r, with_ball);
                if (res < best.constraint_residual) {
                    best.constraint_residual = res;
                    best.j = j;
                }
                best.cycles = it + 1;
                if (res < tol) {
                    best.feasible = true;
                    return best;
                }
                if (last_improved_at - res < std::max(tol * 0.01, res * 1e-3)) {
                    if (++stale_checks >= 6) return best;
                } else {
                    stale_checks = 0;
                    last_improved_at = res;
                }
            }
        }
        return best;
    }

    double combined_residual(const Matrix& j, double r, bool with_ball) const {
        double m = residual_at(j);
        if (with_ball)
            m = std::max(m, std::max(0.0, trace_norm(apply(j) - sigma_) - r));
        return m;
    }

private:
    const ConstraintSet& cs_;
    Matrix rho_, rho_t_, sigma_;
    double purity_ = 1.0;
};

Matrix random_psd_choi(int in_dim, int out_dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    int d = in_dim * out_dim;
    Matrix g(d, d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) g(i, k) = Complex(gauss(rng), gauss(rng));
    Matrix j = g * g.adjoint();
    j *= static_cast<double>(in_dim) / j.trace().real();
    return j;
}

}  // namespace

ChoiMatrix project_to_free(const ChoiMatrix& j, const ConstraintSet& cs,
                           int max_iters, double tol) {
    DykstraSolver solver(cs, Matrix::Identity(cs.in_dim, cs.in_dim) / cs.in_dim,
                         Matrix::Identity(cs.out_dim, cs.out_dim) / cs.out_dim);
    auto res = solver.run(j.m, 0.0, false, max_iters, tol);
    return {res.j, cs.in_dim, cs.out_dim};
}

OracleResult min_residual(const DensityMatrix& rho, const DensityMatrix& sigma,
                          const TheorySpec& th, const OracleBudget& budget) {
    const int in_dim = rho.dim(), out_dim = sigma.dim();
    if (in_dim * out_dim > 64)
        throw UnsupportedError("min_residual: Choi dimension above the search cap");
    ConstraintSet cs = choi_constraints(th, in_dim, out_dim);
    DykstraSolver solver(cs, rho.matrix(), sigma.matrix());

    std::mt19937_64 rng(budget.seed);

    OracleResult result;
    result.residual = std::numeric_limits<double>::infinity();

    // Exact free-replacement channel as a closed-form candidate, when it is a
    // member of the constraint set.
    if (has_nearest_free_closed_form(th) && th.dim == out_dim) {
        DensityMatrix mu = nearest_free_state(sigma, th);
        ChoiMatrix rep = replacement_choi(mu, in_dim);
        if (max_residual(verify_channel(rep, cs)) <= budget.tol) {
            result.residual = trace_distance(sigma, mu);
            result.choi = rep;
            result.converged = true;
        }
    }

    // Interpolation candidate (1 - w) id + w replace(mu) with the smallest w
    // making mu = (sigma - (1 - w) rho) / w a state: maps rho to sigma exactly,
    // so its projection onto the constraint set starts near the optimum.
    Matrix j_interp;
    bool have_interp = false;
    if (in_dim == out_dim) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(rho.matrix(),
                                                             sigma.matrix());
        double lam_max = ges.eigenvalues().maxCoeff();  // of sigma^{-1} rho
        double keep = std::min(1.0, lam_max > 0 ? 1.0 / lam_max : 1.0);
        double w = 1.0 - keep;
        if (w > 1e-12) {
            Matrix mu = (sigma.matrix() - keep * rho.matrix()) / w;
            mu = (mu + mu.adjoint()) / 2.0;
            j_interp = keep * identity_choi(in_dim).m +
                       w * tensor(Matrix::Identity(in_dim, in_dim), mu);
            have_interp = true;
        }
    }

    for (int restart = 0; restart < std::max(1, budget.restarts); ++restart) {
        result.restarts_used = restart + 1;
        Matrix j0;
        if (restart == 0 && in_dim == out_dim) {
            j0 = identity_choi(in_dim).m;
        } else if (restart == 1 && has_nearest_free_closed_form(th) &&
                   th.dim == out_dim) {
            j0 = replacement_choi(dephase(sigma), in_dim).m;
        } else if (restart == 2 && have_interp) {
            j0 = j_interp;
        } else {
            j0 = random_psd_choi(in_dim, out_dim, rng);
        }

        // Base run: the ball never binds at r = 2, so this lands on the
        // feasible channel set near j0.
        auto base = solver.run(j0, 2.0, true, budget.max_iters, budget.tol);
        result.iterations += base.cycles;
        Matrix j_best = base.j;
        bool any_feasible = base.feasible;

        double lo = 0.0, hi = 2.0;
        if (base.feasible)
            hi = std::min(hi, trace_norm(solver.apply(j_best) - sigma.matrix()));

        for (int depth = 0; depth < budget.bisection_depth && hi - lo > 1e-9;
             ++depth) {
            double mid = (lo + hi) / 2.0;
            auto run = solver.run(j_best, mid, true, budget.max_iters, budget.tol);
            result.iterations += run.cycles;
            if (run.feasible) {
                any_feasible = true;
                j_best = run.j;
                hi = std::min(mid,
                              trace_norm(solver.apply(j_best) - sigma.matrix()));
            } else {
                lo = mid;
            }
        }

        // Polish onto the constraint set, then report the achieved residual.
        auto polish = solver.run(j_best, 0.0, false, 400, budget.tol * 1e-2);
        result.iterations += polish.cycles;
        Matrix j_final = polish.j;
        double constraint_res = solver.residual_at(j_final);
        double achieved = trace_norm(solver.apply(j_final) - sigma.matrix());

        if (constraint_res <= budget.tol && achieved < result.residual) {
            result.residual = achieved;
            result.choi = {j_final, in_dim, out_dim};
            result.converged = any_feasible;
        }
    }

    if (!std::isfinite(result.residual)) {
        // Nothing converged; report the trivial depolarizing fallback.
        result.residual = 2.0;
        result.converged = false;
        result.choi = {tensor(Matrix::Identity(in_dim, in_dim),
                              Matrix::Identity(out_dim, out_dim) / out_dim),
                       in_dim, out_dim};
        return result;
    }

    // The objective ||L(J) - sigma||_1 over the constraint set is convex;
    // linearized ADMM on (J, Y) with Y = L(J) split converges to the global
    // optimum and rescues runs where the bisection stalled early. The Y-step
    // is the trace-norm prox (eigenvalue soft threshold around sigma).
    if (result.residual > 10.0 * budget.tol && in_dim * out_dim <= 16) {
        const double purity = (rho.matrix() * rho.matrix()).trace().real();
        const Matrix rho_t = rho.matrix().transpose();
        auto map = [&](const Matrix& j) {
            return apply_choi_raw(j, rho.matrix(), in_dim, out_dim);
        };

        Matrix j = result.choi.m;
        Matrix y = map(j);
        Matrix u = Matrix::Zero(out_dim, out_dim);
        Matrix j_best = j;
        double f_best = result.residual;
        const double thresh = 0.2;  // prox parameter 1 / penalty
        int last_improve = 0;
        for (int step = 0; step < 2000; ++step) {
            if (step - last_improve > 250) break;  // stalled: optimum reached
            // J-step: one projected gradient step on ||L(J) - Y + U||^2.
            Matrix grad = tensor(rho_t, map(j) - y + u);
            auto proj = solver.run(j - grad / std::max(purity, 1e-6), 0.0, false,
                                   600, budget.tol * 1e-2);
            result.iterations += proj.cycles;
            j = proj.j;
            // Y-step: prox of the trace norm centered at sigma.
            Matrix delta = map(j) + u - sigma.matrix();
            delta = (delta + delta.adjoint()) / 2.0;
            Eigen::SelfAdjointEigenSolver<Matrix> es(delta);
            Eigen::VectorXd lam = es.eigenvalues();
            for (Eigen::Index i = 0; i < lam.size(); ++i)
                lam[i] = lam[i] > 0 ? std::max(0.0, lam[i] - thresh)
                                    : std::min(0.0, lam[i] + thresh);
            y = sigma.matrix() +
                es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
            u += map(j) - y;

            double f = trace_norm(map(j) - sigma.matrix());
            if (f < f_best * (1.0 - 1e-4)) last_improve = step;
            if (f < f_best && solver.residual_at(j) <= budget.tol) {
                f_best = f;
                j_best = j;
            }
            if (f_best <= budget.tol) break;
        }
        if (f_best < result.residual) {
            result.residual = f_best;
            result.choi = {j_best, in_dim, out_dim};
            result.converged = true;
        }
    }
    return result;
}

ChoiMatrix sample_free_channel(const TheorySpec& th, int dim, std::mt19937_64& rng) {
    ConstraintSet cs = choi_constraints(th, dim, dim);
    Matrix j0 = random_psd_choi(dim, dim, rng);
    ChoiMatrix j = project_to_free({j0, dim, dim}, cs, 4000, 1e-12);
    // Final clean pass: affine then a PSD clip.
    for (int round = 0; round < 4; ++round) {
        for (const auto& c : cs.affine) j.m = c.project(j.m);
        j.m = project_psd(j.m);
    }
    for (const auto& c : cs.affine) j.m = c.project(j.m);
    return j;
}

ChoiMatrix repair_dio_exact(const ChoiMatrix& j, double tol) {
    const int din = j.in_dim, dout = j.out_dim;
    ConstraintSet cs = choi_constraints(TheorySpec::coherence(din), din, dout);
    Matrix m = (j.m + j.m.adjoint()) / 2.0;
    for (int round = 0; round < 50; ++round) {
        // Zero pattern of dephasing covariance.
        for (int i = 0; i < din; ++i)
            for (int a = 0; a < dout; ++a)
                for (int k = 0; k < din; ++k)
                    for (int b = 0; b < dout; ++b)
                        if ((i != k && a == b) || (i == k && a != b))
                            m(i * dout + a, k * dout + b) = 0;
        // Trace preservation touches only diagonal blocks after masking.
        for (int i = 0; i < din; ++i) {
            double s = 0;
            for (int a = 0; a < dout; ++a) s += m(i * dout + a, i * dout + a).real();
            double shift = (1.0 - s) / dout;
            for (int a = 0; a < dout; ++a) m(i * dout + a, i * dout + a) += shift;
        }
        m = project_psd(m);
        ChoiMatrix cand{m, din, dout};
        if (max_residual(verify_channel(cand, cs)) < tol) return cand;
    }
    return {m, din, dout};
}

}  // namespace resmono
