#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "resmono/convert.hpp"

namespace resmono {

struct MonotoneEntry {
    std::string name;
    std::function<double(const DensityMatrix&)> eval;
    bool continuous = true;
    bool faithful = true;
};

using MonotoneList = std::vector<MonotoneEntry>;

// sqrt(1-eps) |phi_f> + sqrt(eps) |phi_perp>; the near-free pure state that
// defeats any finite list of continuous faithful monotones.
PureState construct_psi_epsilon(const PureState& phi_f, const PureState& phi_perp,
                                double eps);

struct DefeatResult {
    double epsilon = 0;
    PureState psi;
    // Per-monotone thresholds actually found, aligned with the applicable list.
    std::vector<std::pair<std::string, double>> epsilons;
    std::vector<std::string> inapplicable;  // discontinuous or vanishing on rho
};

// Largest eps in (0, 1/2] with R_i(rho) >= R_i(psi_eps) for every applicable
// monotone, found by per-monotone bisection.
DefeatResult find_defeating_epsilon(const MonotoneList& list,
                                    const DensityMatrix& rho,
                                    const PureState& phi_f,
                                    const PureState& phi_perp);

struct BlockedReport {
    double p_min = 0;           // smallest eigenvalue of rho
    double oracle_residual = 0; // min residual found for rho -> psi_eps
    bool oracle_blocked = false;       // residual stayed above 0.01
    bool decider_refutes = false;      // qubit exact decider says NotConvertible
    std::string analytic_note;  // the p_min inequality chain, instantiated
};

BlockedReport verify_blocked(const DensityMatrix& rho, const PureState& psi_eps,
                             const TheorySpec& th, const OracleBudget& budget = {});

struct TotalOrderReport {
    int samples = 0;
    int ordered = 0;
    double ordered_fraction = 0;
    std::optional<std::pair<DensityMatrix, DensityMatrix>> incomparable_witness;
};

// Fraction of random qubit pairs with a free transformation in at least one
// direction under the theory's exact decider.
TotalOrderReport check_total_order(const TheorySpec& th, int sample_count,
                                   unsigned seed = 0);

struct ContractionResult {
    double value = 0;  // R(sigma_eps)
    double bound = 0;  // (1 - eps) R(sigma)
    bool holds = false;
};

// R((1-eps) sigma + eps mu_f) with mu_f the nearest free state of sigma.
ContractionResult sigma_epsilon_contraction(const DensityMatrix& sigma,
                                            const TheorySpec& th, double eps);

}  // namespace resmono
