#pragma once

#include "resmono/oracle.hpp"

namespace resmono {

// Catalyst of the 3-step dephasing-covariant protocol: a state on
// S^(n-1) (x) K with K of dimension n, built from rho and the block channel's
// output marginals.
struct CatalystState {
    int n = 1;
    int system_dim = 2;
    DensityMatrix state;          // factors [d, ..., d, n]
    std::vector<Matrix> gammas;   // Gamma_0 .. Gamma_{n-1}; Gamma_0 is 1x1
};

struct ProtocolTrace {
    DensityMatrix mu1;    // after the K measurement + conditional channel
    DensityMatrix mu2;    // after the K cyclic shift
    DensityMatrix mu_sc;  // after the cyclic subsystem swap
    double decoupling_error = 0;            // || mu_sc - sigma (x) tau ||_1
    double catalyst_restoration_error = 0;  // || Tr_S mu_sc - tau ||_1
};

struct BlockChannelResult {
    ChoiMatrix lambda;
    double epsilon_achieved = 0;
    bool converged = true;
};

// Oracle search for a dephasing-covariant channel taking rho^(x)n close to
// sigma^(x)m (x) |0..0>. The returned channel is repaired to machine-exact
// feasibility and epsilon recomputed from it.
BlockChannelResult find_block_channel(const DensityMatrix& rho,
                                      const DensityMatrix& sigma, int n, int m,
                                      unsigned seed = 0);

CatalystState build_catalyst(const DensityMatrix& rho, const ChoiMatrix& lambda,
                             int n);

ProtocolTrace run_protocol(const DensityMatrix& rho, const CatalystState& tau,
                           const ChoiMatrix& lambda, const DensityMatrix& sigma);

struct CatalyticCheck {
    bool ok = false;
    double c_input = 0;       // C(rho (x) tau)
    double c_output = 0;      // C(mu_sc)
    double c_system_in = 0;   // C(rho)
    double c_system_out = 0;  // C(Tr_C mu_sc)
};

CatalyticCheck catalytic_monotone_check(const DensityMatrix& rho,
                                        const CatalystState& tau,
                                        const ProtocolTrace& trace);

// Choi matrix of the composed steps 1-3 as one channel on S (x) C.
ChoiMatrix compose_protocol_choi(const ChoiMatrix& lambda, int n, int d);

}  // namespace resmono
