#include "resmono/limits.hpp"

#include <cmath>
#include <sstream>

namespace resmono {

PureState construct_psi_epsilon(const PureState& phi_f, const PureState& phi_perp,
                                double eps) {
    if (phi_f.dim() != phi_perp.dim())
        throw DimensionError("construct_psi_epsilon: dimension mismatch");
    if (std::abs(phi_f.amplitudes().dot(phi_perp.amplitudes())) > 1e-10)
        throw PreconditionError("construct_psi_epsilon: states must be orthogonal");
    if (eps < 0.0 || eps > 1.0)
        throw PreconditionError("construct_psi_epsilon: eps must be in [0, 1]");
    Vector v = std::sqrt(1.0 - eps) * phi_f.amplitudes() +
               std::sqrt(eps) * phi_perp.amplitudes();
    return PureState(v / v.norm());
}

DefeatResult find_defeating_epsilon(const MonotoneList& list,
                                    const DensityMatrix& rho,
                                    const PureState& phi_f,
                                    const PureState& phi_perp) {
    if (list.empty())
        throw PreconditionError("find_defeating_epsilon: empty monotone list");
    if (rho.min_eigenvalue() <= 1e-9)
        throw PreconditionError("find_defeating_epsilon: rho must be full rank");

    std::vector<std::pair<std::string, double>> epsilons;
    std::vector<std::string> inapplicable;
    double eps = 0.5;
    for (const auto& mono : list) {
        double target = mono.eval(rho);
        if (!mono.continuous || !mono.faithful || target <= 1e-12) {
            inapplicable.push_back(mono.name);
            continue;
        }
        auto value_at = [&](double e) {
            return mono.eval(DensityMatrix(construct_psi_epsilon(phi_f, phi_perp, e)));
        };
        double found;
        if (value_at(0.5) <= target) {
            found = 0.5;
        } else {
            double lo = 0.0, hi = 0.5;  // value_at(lo) <= target by continuity
            for (int it = 0; it < 40; ++it) {
                double mid = (lo + hi) / 2.0;
                (value_at(mid) <= target ? lo : hi) = mid;
            }
            found = lo;
        }
        epsilons.emplace_back(mono.name, found);
        eps = std::min(eps, found);
    }
    if (epsilons.empty())
        throw PreconditionError(
            "find_defeating_epsilon: no applicable continuous faithful monotone");
    return {eps, construct_psi_epsilon(phi_f, phi_perp, eps), epsilons,
            inapplicable};
}

BlockedReport verify_blocked(const DensityMatrix& rho, const PureState& psi_eps,
                             const TheorySpec& th, const OracleBudget& budget) {
    if (rho.min_eigenvalue() <= 1e-9)
        throw PreconditionError("verify_blocked: rho must be full rank");
    DensityMatrix psi_state(psi_eps);
    if (is_free(psi_state, th))
        throw PreconditionError("verify_blocked: psi_eps must be a resource state");

    BlockedReport rep;
    auto [p_min, sigma] = decompose_full_rank(rho, psi_eps);
    (void)sigma;
    rep.p_min = p_min;
    {
        std::ostringstream os;
        os << "any free channel with <psi|L[rho]|psi> > 1 - e forces "
              "<psi|L[phi]|psi> > 1 - e/"
           << p_min
           << " for every pure phi, including free ones; free operations "
              "cannot do that";
        rep.analytic_note = os.str();
    }

    OracleResult res = min_residual(rho, psi_state, th, budget);
    rep.oracle_residual = res.residual;
    rep.oracle_blocked = res.residual > 0.01;

    if (rho.is_qubit() && th.kind == TheoryKind::Coherence) {
        rep.decider_refutes =
            decide_coherence_qubit(rho, psi_state).outcome == Outcome::NotConvertible;
    } else if (rho.dim() == th.dim) {
        Verdict v = decide(th, rho, psi_state);
        rep.decider_refutes = v.outcome == Outcome::NotConvertible;
    }
    return rep;
}

TotalOrderReport check_total_order(const TheorySpec& th, int sample_count,
                                   unsigned seed) {
    TotalOrderReport rep;
    rep.samples = sample_count;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < sample_count; ++i) {
        DensityMatrix a = random_qubit_state(rng);
        DensityMatrix b = random_qubit_state(rng);
        bool fwd = decide(th, a, b).outcome == Outcome::Convertible;
        bool bwd = decide(th, b, a).outcome == Outcome::Convertible;
        if (fwd || bwd)
            ++rep.ordered;
        else if (!rep.incomparable_witness)
            rep.incomparable_witness = std::make_pair(a, b);
    }
    rep.ordered_fraction =
        sample_count > 0 ? static_cast<double>(rep.ordered) / sample_count : 1.0;
    return rep;
}

ContractionResult sigma_epsilon_contraction(const DensityMatrix& sigma,
                                            const TheorySpec& th, double eps) {
    if (!has_nearest_free_closed_form(th))
        throw UnsupportedError("sigma_epsilon_contraction: needs a closed-form "
                               "nearest free state");
    DensityMatrix mu = nearest_free_state(sigma, th);
    Matrix mixed = (1.0 - eps) * sigma.matrix() + eps * mu.matrix();
    DensityMatrix sigma_eps(mixed, sigma.factors());
    ContractionResult r;
    r.value = nearest_free_distance(sigma_eps, th).value;
    r.bound = (1.0 - eps) * nearest_free_distance(sigma, th).value;
    r.holds = r.value <= r.bound + 1e-10;
    return r;
}

}  // namespace resmono
