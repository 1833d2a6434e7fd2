#include "resmono/convert.hpp"

#include <cmath>
#include <limits>

namespace resmono {

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Convertible: return "Convertible";
        case Outcome::NotConvertible: return "NotConvertible";
        case Outcome::Undecided: return "Undecided";
    }
    return "?";
}

namespace {

using Evaluator = double (*)(const DensityMatrix&);

Verdict from_monotone_pair(const DensityMatrix& rho, const DensityMatrix& sigma,
                           std::vector<std::pair<std::string, Evaluator>> ms,
                           double tol) {
    Verdict v;
    v.tolerance = tol;
    v.outcome = Outcome::Convertible;
    for (auto& [name, f] : ms) {
        double a = f(rho), b = f(sigma);
        v.witnesses.push_back({name, a, b});
        if (b > a + tol) v.outcome = Outcome::NotConvertible;
    }
    if (v.outcome == Outcome::Convertible) {
        // Keep only the comparison record; Convertible needs no violated witness.
        return v;
    }
    std::vector<Witness> violated;
    for (auto& w : v.witnesses)
        if (w.value_to > w.value_from + tol) violated.push_back(w);
    v.witnesses = violated;
    return v;
}

}  // namespace

Verdict decide_coherence_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double tol) {
    return from_monotone_pair(rho, sigma,
                              {{"c_r", &c_r}, {"c_delta_r", &c_delta_r}}, tol);
}

Verdict decide_imaginarity_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 double tol) {
    return from_monotone_pair(rho, sigma, {{"i1", &i1}, {"i2", &i2}}, tol);
}

Verdict decide_asymmetry_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double tol) {
    return from_monotone_pair(rho, sigma, {{"a1", &a1}, {"a2", &a2}}, tol);
}

Verdict decide_thermal_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const DensityMatrix& gibbs, double tol) {
    if (std::abs(gibbs(0, 1)) > kFreeTol || gibbs.min_eigenvalue() <= kFreeTol)
        throw PreconditionError(
            "decide_thermal_qubit: Gibbs state must be diagonal and full rank");
    Verdict v;
    v.tolerance = tol;
    v.outcome = Outcome::Convertible;
    struct Cond {
        std::string name;
        ExtendedReal from, to;
    };
    std::vector<Cond> conds = {
        {"d_max_rho_gibbs", d_max(rho, gibbs), d_max(sigma, gibbs)},
        {"d_max_gibbs_rho", d_max(gibbs, rho), d_max(gibbs, sigma)},
        {"d_min_gibbs_rho", d_min(gibbs, rho), d_min(gibbs, sigma)},
        {"a1", ExtendedReal::finite(a1(rho)), ExtendedReal::finite(a1(sigma))},
        {"a2", ExtendedReal::finite(a2(rho)), ExtendedReal::finite(a2(sigma))},
    };
    for (auto& c : conds) {
        double from = c.from.infinite ? std::numeric_limits<double>::infinity()
                                      : c.from.value;
        double to = c.to.infinite ? std::numeric_limits<double>::infinity()
                                  : c.to.value;
        if (!c.from.geq_within(c.to, tol)) {
            v.outcome = Outcome::NotConvertible;
            v.witnesses.push_back({c.name, from, to});
        }
    }
    return v;
}

Verdict decide_totally_ordered_qubit(const DensityMatrix& rho,
                                     const DensityMatrix& sigma, double t,
                                     double tol) {
    double r = bloch_from_density(rho).norm();
    double s = bloch_from_density(sigma).norm();
    Verdict v;
    v.tolerance = tol;
    if (s <= t + tol || r >= s - tol) {
        v.outcome = Outcome::Convertible;
    } else {
        v.outcome = Outcome::NotConvertible;
        v.witnesses.push_back(
            {"bloch_radius", std::max(r - t, 0.0), std::max(s - t, 0.0)});
    }
    return v;
}

Verdict decide(const TheorySpec& th, const DensityMatrix& rho,
               const DensityMatrix& sigma, const OracleBudget& budget) {
    if (rho.dim() == 2 && sigma.dim() == 2 && th.dim == 2) {
        switch (th.kind) {
            case TheoryKind::Coherence:
                return decide_coherence_qubit(rho, sigma);
            case TheoryKind::Imaginarity:
                return decide_imaginarity_qubit(rho, sigma);
            case TheoryKind::AsymmetryQubit:
                return decide_asymmetry_qubit(rho, sigma);
            case TheoryKind::ThermalQubit:
                return decide_thermal_qubit(rho, sigma, *th.gibbs);
            case TheoryKind::TotallyOrderedBall:
                return decide_totally_ordered_qubit(rho, sigma, th.t);
            case TheoryKind::PurityUnital:
                return decide_totally_ordered_qubit(rho, sigma, 0.0);
            default:
                break;
        }
    }

    Verdict v;
    v.tolerance = kOracleDecideTol;
    // Exact refutation: free states cannot reach resource states.
    if (is_free(rho, th) && !is_free(sigma, th)) {
        v.outcome = Outcome::NotConvertible;
        v.witnesses.push_back({"is_free", 0.0, 1.0});
        return v;
    }
    OracleResult r = min_residual(rho, sigma, th, budget);
    v.oracle_residual = r.residual;
    if (r.converged && r.residual < kOracleDecideTol)
        v.outcome = Outcome::Convertible;
    else
        v.outcome = Outcome::Undecided;
    return v;
}

}  // namespace resmono
