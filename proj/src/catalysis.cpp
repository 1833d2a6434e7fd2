#include "resmono/catalysis.hpp"

#include <cmath>

#include "resmono/monotones.hpp"

namespace resmono {

namespace {

long ipow(int base, int exp) {
    long p = 1;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

std::vector<int> full_factors(int n, int d) {
    std::vector<int> f(n, d);
    f.push_back(n);
    return f;
}

Matrix kron_power(const Matrix& m, int k) {
    Matrix out = Matrix::Identity(1, 1);
    for (int i = 0; i < k; ++i) out = tensor(out, m);
    return out;
}

// Step 1: measure K, apply lambda on the n-copy system when the outcome is
// the last one. Output is K-block-diagonal.
Matrix protocol_step1(const Matrix& chi, const ChoiMatrix& lambda, int n, int d) {
    const long s_dim = ipow(d, n);
    const long dim = s_dim * n;
    Matrix out = Matrix::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
        Matrix block(s_dim, s_dim);
        for (long s = 0; s < s_dim; ++s)
            for (long sp = 0; sp < s_dim; ++sp)
                block(s, sp) = chi(s * n + k, sp * n + k);
        if (k == n - 1)
            block = apply_choi_raw(lambda.m, block, static_cast<int>(s_dim),
                                   static_cast<int>(s_dim));
        for (long s = 0; s < s_dim; ++s)
            for (long sp = 0; sp < s_dim; ++sp)
                out(s * n + k, sp * n + k) = block(s, sp);
    }
    return out;
}

// Step 2: cyclic shift on K, |k> -> |k+1 mod n>. Acts on the K-diagonal
// blocks produced by step 1.
Matrix protocol_step2(const Matrix& chi, int n, int d) {
    const long s_dim = ipow(d, n);
    const long dim = s_dim * n;
    Matrix out = Matrix::Zero(dim, dim);
    for (int k = 0; k < n; ++k) {
        int kp = (k + 1) % n;
        for (long s = 0; s < s_dim; ++s)
            for (long sp = 0; sp < s_dim; ++sp)
                out(s * n + kp, sp * n + kp) = chi(s * n + k, sp * n + k);
    }
    return out;
}

// Step 3: cyclic swap of the system copies, S_i -> S_{i+1}, S_n -> S_1.
Matrix protocol_step3(const Matrix& chi, int n, int d) {
    std::vector<int> perm(n + 1);
    for (int j = 0; j < n; ++j) perm[j] = (j - 1 + n) % n;
    perm[n] = n;
    return permute_factors(chi, full_factors(n, d), perm);
}

Matrix protocol_apply(const Matrix& chi, const ChoiMatrix& lambda, int n, int d) {
    return protocol_step3(protocol_step2(protocol_step1(chi, lambda, n, d), n, d),
                          n, d);
}

// Trace out the last n - m copies and append |0..0>.
ChoiMatrix discard_reset_choi(int d, int n, int m) {
    const int keep_dim = static_cast<int>(ipow(d, m));
    const int drop_dim = static_cast<int>(ipow(d, n - m));
    std::vector<Matrix> kraus;
    for (int v = 0; v < drop_dim; ++v) {
        Matrix e = Matrix::Zero(drop_dim, drop_dim);
        e(0, v) = 1.0;
        kraus.push_back(tensor(Matrix::Identity(keep_dim, keep_dim), e));
    }
    int dim = keep_dim * drop_dim;
    return choi_from_kraus(kraus, dim, dim);
}

DensityMatrix tensor_power(const DensityMatrix& rho, int k) {
    std::vector<int> factors(k, rho.dim());
    if (k == 0) return DensityMatrix(Matrix::Identity(1, 1), {1});
    return DensityMatrix(kron_power(rho.matrix(), k), factors);
}

}  // namespace

BlockChannelResult find_block_channel(const DensityMatrix& rho,
                                      const DensityMatrix& sigma, int n, int m,
                                      unsigned seed) {
    if (rho.dim() != sigma.dim())
        throw DimensionError("find_block_channel: dimension mismatch");
    if (n < 1 || m < 0 || m > n)
        throw PreconditionError("find_block_channel: need 0 <= m <= n");
    const int d = rho.dim();
    const long s_dim = ipow(d, n);
    if (s_dim * s_dim > 64)
        throw UnsupportedError("find_block_channel: copy count too large");

    DensityMatrix rho_n = tensor_power(rho, n);
    Matrix zero_block = Matrix::Zero(ipow(d, n - m), ipow(d, n - m));
    zero_block(0, 0) = 1.0;
    Matrix target_m = tensor(kron_power(sigma.matrix(), m), zero_block);
    std::vector<int> tf(n, d);
    DensityMatrix target(target_m, tf);

    TheorySpec th = TheorySpec::coherence(static_cast<int>(s_dim));
    OracleBudget budget;
    budget.restarts = 2;
    budget.max_iters = 1200;
    budget.bisection_depth = 16;
    budget.seed = seed;
    OracleResult res = min_residual(rho_n, target, th, budget);

    ChoiMatrix lam = repair_dio_exact(res.choi);
    double eps = trace_norm(
        apply_choi_raw(lam.m, rho_n.matrix(), lam.in_dim, lam.out_dim) -
        target_m);

    // A discard-and-reset channel is always feasible; keep whichever is better.
    ChoiMatrix dr = discard_reset_choi(d, n, m);
    double eps_dr = trace_norm(
        apply_choi_raw(dr.m, rho_n.matrix(), dr.in_dim, dr.out_dim) - target_m);
    if (eps_dr < eps) {
        lam = dr;
        eps = eps_dr;
    }
    return {lam, eps, res.converged};
}

CatalystState build_catalyst(const DensityMatrix& rho, const ChoiMatrix& lambda,
                             int n) {
    const int d = rho.dim();
    const long s_dim = ipow(d, n);
    if (lambda.in_dim != s_dim || lambda.out_dim != s_dim)
        throw DimensionError("build_catalyst: channel must act on n copies");

    DensityMatrix gamma = apply_choi(lambda, tensor_power(rho, n));
    std::vector<int> gf(n, d);
    DensityMatrix gamma_f(gamma.matrix(), gf);

    std::vector<Matrix> gammas;
    gammas.push_back(Matrix::Identity(1, 1));  // Gamma_0 = 1
    for (int i = 1; i < n; ++i) {
        std::vector<int> keep(i);
        for (int k = 0; k < i; ++k) keep[k] = k;
        gammas.push_back(partial_trace(gamma_f, keep).matrix());
    }

    const long tau_dim = ipow(d, n - 1) * n;
    Matrix tau = Matrix::Zero(tau_dim, tau_dim);
    for (int k = 1; k <= n; ++k) {
        Matrix kproj = Matrix::Zero(n, n);
        kproj(k - 1, k - 1) = 1.0;
        Matrix term = tensor(tensor(kron_power(rho.matrix(), k - 1),
                                    gammas[n - k]),
                             kproj);
        tau += term / static_cast<double>(n);
    }
    std::vector<int> tau_factors(n - 1, d);
    tau_factors.push_back(n);
    return {n, d, DensityMatrix((tau + tau.adjoint()) / 2.0, tau_factors), gammas};
}

ProtocolTrace run_protocol(const DensityMatrix& rho, const CatalystState& tau,
                           const ChoiMatrix& lambda, const DensityMatrix& sigma) {
    const int n = tau.n, d = tau.system_dim;
    if (rho.dim() != d || sigma.dim() != d)
        throw DimensionError("run_protocol: system dimension mismatch");
    auto factors = full_factors(n, d);

    Matrix chi0 = tensor(rho.matrix(), tau.state.matrix());
    Matrix m1 = protocol_step1(chi0, lambda, n, d);
    Matrix m2 = protocol_step2(m1, n, d);
    Matrix msc = protocol_step3(m2, n, d);

    ProtocolTrace trace{
        DensityMatrix((m1 + m1.adjoint()) / 2.0, factors),
        DensityMatrix((m2 + m2.adjoint()) / 2.0, factors),
        DensityMatrix((msc + msc.adjoint()) / 2.0, factors),
        0.0,
        0.0,
    };

    std::vector<int> keep_catalyst(n);
    for (int k = 1; k <= n; ++k) keep_catalyst[k - 1] = k;
    DensityMatrix reduced = partial_trace(trace.mu_sc, keep_catalyst);
    trace.catalyst_restoration_error =
        trace_norm(reduced.matrix() - tau.state.matrix());
    trace.decoupling_error =
        trace_norm(msc - tensor(sigma.matrix(), tau.state.matrix()));
    return trace;
}

CatalyticCheck catalytic_monotone_check(const DensityMatrix& rho,
                                        const CatalystState& tau,
                                        const ProtocolTrace& trace) {
    CatalyticCheck c;
    c.c_input = rel_entropy_coherence(tensor(rho, tau.state));
    c.c_output = rel_entropy_coherence(trace.mu_sc);
    c.c_system_in = rel_entropy_coherence(rho);
    c.c_system_out = rel_entropy_coherence(partial_trace(trace.mu_sc, {0}));
    c.ok = c.c_input >= c.c_output - 1e-8 &&
           c.c_system_in >= c.c_system_out - 1e-6;
    return c;
}

ChoiMatrix compose_protocol_choi(const ChoiMatrix& lambda, int n, int d) {
    const int dim = static_cast<int>(ipow(d, n) * n);
    Matrix j = Matrix::Zero(static_cast<long>(dim) * dim,
                            static_cast<long>(dim) * dim);
    Matrix basis = Matrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            basis(r, c) = 1.0;
            Matrix img = protocol_apply(basis, lambda, n, d);
            basis(r, c) = 0.0;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b)
                    j(static_cast<long>(r) * dim + a,
                      static_cast<long>(c) * dim + b) = img(a, b);
        }
    return {j, dim, dim};
}

}  // namespace resmono
