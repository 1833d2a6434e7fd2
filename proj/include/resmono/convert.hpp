#pragma once

#include <string>
#include <vector>

#include "resmono/monotones.hpp"
#include "resmono/oracle.hpp"

namespace resmono {

enum class Outcome { Convertible, NotConvertible, Undecided };

std::string outcome_name(Outcome o);

struct Witness {
    std::string monotone;
    double value_from = 0;  // at the source state
    double value_to = 0;    // at the target state
};

struct Verdict {
    Outcome outcome = Outcome::Undecided;
    std::vector<Witness> witnesses;
    double tolerance = 0;
    double oracle_residual = -1;  // >= 0 when an oracle run backed the verdict
};

// Decision tolerance for monotone comparisons; boundary cases resolve to
// Convertible.
constexpr double kDecideTol = 1e-9;

// Oracle residual below which the dispatcher affirms convertibility.
constexpr double kOracleDecideTol = 1e-5;

Verdict decide_coherence_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double tol = kDecideTol);
Verdict decide_imaginarity_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                                 double tol = kDecideTol);
Verdict decide_asymmetry_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                               double tol = kDecideTol);
Verdict decide_thermal_qubit(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const DensityMatrix& gibbs, double tol = kDecideTol);
Verdict decide_totally_ordered_qubit(const DensityMatrix& rho,
                                     const DensityMatrix& sigma, double t,
                                     double tol = kDecideTol);

// Routes to the exact decider when one exists, otherwise runs the channel
// oracle. The oracle only affirms; refutation needs a monotone witness.
Verdict decide(const TheorySpec& th, const DensityMatrix& rho,
               const DensityMatrix& sigma, const OracleBudget& budget = {});

}  // namespace resmono
