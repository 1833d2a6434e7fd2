#include "resmono/monotones.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "resmono/oracle.hpp"

namespace resmono {

namespace {

void require_qubit(const DensityMatrix& rho, const char* who) {
    if (!rho.is_qubit())
        throw UnsupportedError(std::string(who) + ": qubit states only");
}

}  // namespace

double c_r(const DensityMatrix& rho) {
    require_qubit(rho, "c_r");
    return 2.0 * std::abs(rho(0, 1));
}

double c_delta_r(const DensityMatrix& rho) {
    require_qubit(rho, "c_delta_r");
    double off = std::abs(rho(0, 1));
    double diag = rho(0, 0).real() * rho(1, 1).real();
    if (diag <= 0) return off > kStateTol ? 1.0 : 0.0;
    return std::min(off / std::sqrt(diag), 1.0);
}

double i1(const DensityMatrix& rho) {
    require_qubit(rho, "i1");
    BlochVector r = bloch_from_density(rho);
    return r.y * r.y;
}

double i2(const DensityMatrix& rho) {
    require_qubit(rho, "i2");
    BlochVector r = bloch_from_density(rho);
    double denom = 1.0 - r.x * r.x - r.z * r.z;
    if (denom <= 1e-14) return std::abs(r.y) > kStateTol ? 1.0 : 0.0;
    return std::min(r.y * r.y / denom, 1.0);
}

double a1(const DensityMatrix& rho) {
    require_qubit(rho, "a1");
    double p = rho(0, 0).real();
    double off = std::abs(rho(0, 1));
    if (p <= 0) return 0.0;  // endpoint convention: off must vanish there
    return off / std::sqrt(p);
}

double a2(const DensityMatrix& rho) {
    require_qubit(rho, "a2");
    double p = rho(0, 0).real();
    double off = std::abs(rho(0, 1));
    if (p >= 1.0) return 0.0;
    return off / std::sqrt(1.0 - p);
}

ExtendedReal d_max(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw DimensionError("d_max: dimension mismatch");
    constexpr double kSupportTol = 1e-10;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho2.matrix());
    RealVector ev = es.eigenvalues();
    // Support check: rho1 must live inside supp(rho2).
    Matrix kernel_proj = Matrix::Zero(rho2.dim(), rho2.dim());
    Matrix inv_sqrt = Matrix::Zero(rho2.dim(), rho2.dim());
    for (int k = 0; k < rho2.dim(); ++k) {
        Vector v = es.eigenvectors().col(k);
        if (ev[k] <= kSupportTol)
            kernel_proj += v * v.adjoint();
        else
            inv_sqrt += (1.0 / std::sqrt(ev[k])) * v * v.adjoint();
    }
    if ((kernel_proj * rho1.matrix() * kernel_proj).trace().real() > kSupportTol)
        return ExtendedReal::infinity();
    Matrix m = inv_sqrt * rho1.matrix() * inv_sqrt;
    double lam = hermitian_eigenvalues(m).maxCoeff();
    return ExtendedReal::finite(std::log2(std::max(lam, 1e-300)));
}

ExtendedReal d_min(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim())
        throw DimensionError("d_min: dimension mismatch");
    constexpr double kSupportTol = 1e-10;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho1.matrix());
    Matrix proj = Matrix::Zero(rho1.dim(), rho1.dim());
    for (int k = 0; k < rho1.dim(); ++k)
        if (es.eigenvalues()[k] > kSupportTol) {
            Vector v = es.eigenvectors().col(k);
            proj += v * v.adjoint();
        }
    double overlap = (proj * rho2.matrix()).trace().real();
    if (overlap <= 0) return ExtendedReal::infinity();
    return ExtendedReal::finite(-std::log2(overlap));
}

double rel_entropy_coherence(const DensityMatrix& rho) {
    double s = von_neumann_entropy(dephase(rho)) - von_neumann_entropy(rho);
    return std::max(s, 0.0);
}

RNuResult r_nu(const DensityMatrix& nu, const DensityMatrix& rho,
               const TheorySpec& th, unsigned seed) {
    OracleBudget budget;
    budget.seed = seed;
    OracleResult r = min_residual(nu, rho, th, budget);
    return {r.residual, r.converged, budget.tol};
}

std::vector<MonotoneReport> evaluate_monotones(const DensityMatrix& rho,
                                               const TheorySpec& th) {
    std::vector<MonotoneReport> out;
    auto add = [&](std::string name, double v, bool cont, bool faithful) {
        out.push_back({std::move(name), v, cont, faithful});
    };
    switch (th.kind) {
        case TheoryKind::Coherence:
            if (rho.is_qubit()) {
                add("c_r", c_r(rho), true, true);
                add("c_delta_r", c_delta_r(rho), false, true);
            }
            add("rel_entropy_coherence", rel_entropy_coherence(rho), true, true);
            break;
        case TheoryKind::Imaginarity:
            add("i1", i1(rho), true, true);
            add("i2", i2(rho), false, true);
            break;
        case TheoryKind::AsymmetryQubit:
            add("a1", a1(rho), false, true);
            add("a2", a2(rho), false, true);
            break;
        case TheoryKind::ThermalQubit: {
            const DensityMatrix& g = *th.gibbs;
            auto fin = [](const ExtendedReal& e) {
                return e.infinite ? std::numeric_limits<double>::infinity()
                                  : e.value;
            };
            add("d_max_rho_gibbs", fin(d_max(rho, g)), true, false);
            add("d_max_gibbs_rho", fin(d_max(g, rho)), false, false);
            add("d_min_gibbs_rho", fin(d_min(g, rho)), false, false);
            add("a1", a1(rho), false, false);
            add("a2", a2(rho), false, false);
            break;
        }
        case TheoryKind::TotallyOrderedBall:
        case TheoryKind::PurityUnital:
        case TheoryKind::PPT:
            break;
    }
    auto nf = nearest_free_distance(rho, th);
    MonotoneReport r{"nearest_free_distance", nf.value, true, true};
    if (nf.approximate) r.name = "nearest_free_distance_upper_bound";
    out.push_back(r);
    return out;
}

}  // namespace resmono
