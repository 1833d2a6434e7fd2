#pragma once

#include <string>
#include <vector>

#include "resmono/theories.hpp"

namespace resmono {

// Totally ordered extended real so divergence comparisons never touch float
// sentinels.
struct ExtendedReal {
    bool infinite = false;
    double value = 0;

    static ExtendedReal finite(double v) { return {false, v}; }
    static ExtendedReal infinity() { return {true, 0}; }

    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite) return false;
        if (b.infinite) return true;
        return a.value < b.value;
    }
    friend bool operator>=(const ExtendedReal& a, const ExtendedReal& b) {
        return !(a < b);
    }
    // Non-increase check with additive slack on the finite part.
    bool geq_within(const ExtendedReal& other, double tol) const {
        if (infinite) return true;
        if (other.infinite) return false;
        return value >= other.value - tol;
    }
};

struct MonotoneReport {
    std::string name;
    double value = 0;
    bool continuous = true;
    bool faithful = true;
};

// Qubit robustness of coherence, 2|rho01|.
double c_r(const DensityMatrix& rho);
// Qubit Delta-robustness, |rho01| / sqrt(rho00 rho11); 1 on coherent pure states.
double c_delta_r(const DensityMatrix& rho);

// Imaginarity monotones in Bloch coordinates.
double i1(const DensityMatrix& rho);
double i2(const DensityMatrix& rho);

// Asymmetry monotones (energy eigenbasis).
double a1(const DensityMatrix& rho);
double a2(const DensityMatrix& rho);

// Max- and min-relative entropies, base 2.
ExtendedReal d_max(const DensityMatrix& rho1, const DensityMatrix& rho2);
ExtendedReal d_min(const DensityMatrix& rho1, const DensityMatrix& rho2);

// S(dephase(rho)) - S(rho) in the computational basis.
double rel_entropy_coherence(const DensityMatrix& rho);

struct RNuResult {
    double value = 0;
    bool converged = true;
    double tolerance = 0;
};

// R_nu(rho) = inf over free channels of || L[nu] - rho ||_1, via the channel
// oracle.
RNuResult r_nu(const DensityMatrix& nu, const DensityMatrix& rho,
               const TheorySpec& th, unsigned seed = 0);

// Monotone reports relevant to a theory, for the CLI eval command.
std::vector<MonotoneReport> evaluate_monotones(const DensityMatrix& rho,
                                               const TheorySpec& th);

}  // namespace resmono
