// Acceptance gate: one pass/fail line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <random>

#include "resmono/catalysis.hpp"
#include "resmono/limits.hpp"
#include "resmono/monotones.hpp"
#include "resmono/oracle.hpp"

using namespace resmono;

namespace {

using Clock = std::chrono::steady_clock;

DensityMatrix diag_state(double p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    return DensityMatrix(m);
}

ChoiMatrix random_cptp(int dim, int kraus_count, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Matrix> raw;
    Matrix s = Matrix::Zero(dim, dim);
    for (int k = 0; k < kraus_count; ++k) {
        Matrix g(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
        raw.push_back(g);
        s += g.adjoint() * g;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    Matrix inv_sqrt = es.eigenvectors() *
                      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      es.eigenvectors().adjoint();
    std::vector<Matrix> kraus;
    for (const Matrix& g : raw) kraus.push_back(g * inv_sqrt);
    return choi_from_kraus(kraus, dim, dim);
}

// Reference feasibility of a 2x2 column-stochastic matrix fixing the Gibbs
// distribution and mapping p to q; one free parameter, closed form.
bool gibbs_stochastic_reachable(double p0, double q0, double g0, double tol = 1e-9) {
    double g1 = 1.0 - g0, p1 = 1.0 - p0;
    double coeff = p1 - g1 * p0 / g0;
    if (std::abs(coeff) < 1e-14) return std::abs(q0 - p0) <= tol;
    double b = (q0 - p0) / coeff;
    double c = b * g1 / g0;
    return b >= -tol && b <= 1.0 + tol && c >= -tol && c <= 1.0 + tol;
}

// --- criterion 1: monotone non-increase under sampled free channels ---------

bool criterion_monotonicity(std::string& detail) {
    std::mt19937_64 rng(101);
    const double slack = 1e-6;
    const int pairs_per_theory = 500;
    long checked = 0, failed = 0;

    struct TheoryCase {
        TheorySpec th;
        std::vector<std::pair<const char*, double (*)(const DensityMatrix&)>> monos;
    };
    std::vector<TheoryCase> cases = {
        {TheorySpec::coherence(),
         {{"c_r", &c_r}, {"c_delta_r", &c_delta_r},
          {"rel_entropy_coherence", &rel_entropy_coherence}}},
        {TheorySpec::imaginarity(), {{"i1", &i1}, {"i2", &i2}}},
        {TheorySpec::asymmetry_qubit(), {{"a1", &a1}, {"a2", &a2}}},
        {TheorySpec::thermal_qubit(diag_state(0.7)), {}},
        {TheorySpec::totally_ordered_ball(0.3), {}},
    };
    for (auto& cse : cases) {
        for (int i = 0; i < pairs_per_theory; ++i) {
            DensityMatrix rho = random_qubit_state(rng);
            ChoiMatrix lam = sample_free_channel(cse.th, 2, rng);
            DensityMatrix out = apply_choi(lam, rho);
            for (auto& [name, m] : cse.monos) {
                ++checked;
                if (m(out) > m(rho) + slack) ++failed;
            }
            ++checked;
            if (nearest_free_distance(out, cse.th).value >
                nearest_free_distance(rho, cse.th).value + slack)
                ++failed;
            if (cse.th.kind == TheoryKind::ThermalQubit) {
                const DensityMatrix gibbs = diag_state(0.7);
                checked += 2;
                if (!d_max(rho, gibbs).geq_within(d_max(out, gibbs), slack)) ++failed;
                if (!d_min(rho, gibbs).geq_within(d_min(out, gibbs), slack)) ++failed;
            }
        }
    }
    detail = std::to_string(checked - failed) + "/" + std::to_string(checked) +
             " evaluations within 1e-6";
    return failed == 0;
}

// --- criterion 2: exact deciders vs the channel oracle -----------------------

bool criterion_decider_oracle(std::string& detail) {
    std::mt19937_64 rng(202);
    const int pairs_per_theory = 200;
    int included = 0, agreed = 0, excluded = 0;

    struct TheoryCase {
        TheorySpec th;
        std::vector<double (*)(const DensityMatrix&)> deciding;
    };
    auto radius = [](const DensityMatrix& r) {
        return bloch_from_density(r).norm();
    };
    std::vector<TheoryCase> cases = {
        {TheorySpec::coherence(), {&c_r, &c_delta_r}},
        {TheorySpec::imaginarity(), {&i1, &i2}},
        {TheorySpec::asymmetry_qubit(), {&a1, &a2}},
        {TheorySpec::purity_unital(), {}},
    };
    for (auto& cse : cases) {
        for (int i = 0; i < pairs_per_theory; ++i) {
            DensityMatrix rho = random_qubit_state(rng);
            DensityMatrix sig = random_qubit_state(rng);
            // Boundary exclusion: any deciding monotone tied within 1e-6.
            bool tie = false;
            for (auto* m : cse.deciding)
                if (std::abs(m(rho) - m(sig)) <= 1e-6) tie = true;
            if (cse.deciding.empty() && std::abs(radius(rho) - radius(sig)) <= 1e-6)
                tie = true;
            if (tie) {
                ++excluded;
                continue;
            }
            Verdict v = decide(cse.th, rho, sig);
            OracleBudget budget;
            budget.seed = 7 * i + 1;
            OracleResult r = min_residual(rho, sig, cse.th, budget);
            ++included;
            if (v.outcome == Outcome::Convertible && r.residual < 1e-4)
                ++agreed;
            else if (v.outcome == Outcome::NotConvertible && r.residual > 1e-3)
                ++agreed;
        }
    }
    double frac = included ? static_cast<double>(agreed) / included : 0.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/%d agree (%.2f%%), %d boundary pairs excluded",
                  agreed, included, 100.0 * frac, excluded);
    detail = buf;
    return frac >= 0.99;
}

// --- criterion 3: thermal decider equals Gibbs-stochastic brute force --------

bool criterion_thermal(std::string& detail) {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> unif(0.001, 0.999);
    const double g0 = 0.65;
    DensityMatrix gibbs = diag_state(g0);
    int agree = 0;
    const int total = 300;
    for (int i = 0; i < total; ++i) {
        double p0 = unif(rng), q0 = unif(rng);
        bool expected = gibbs_stochastic_reachable(p0, q0, g0);
        Verdict v = decide_thermal_qubit(diag_state(p0), diag_state(q0), gibbs);
        if ((v.outcome == Outcome::Convertible) == expected) ++agree;
    }
    detail = std::to_string(agree) + "/" + std::to_string(total) + " diagonal pairs match";
    return agree == total;
}

// --- criterion 4: exact catalyst restoration for arbitrary channels ----------

bool criterion_restoration(std::string& detail) {
    std::mt19937_64 rng(404);
    double worst = 0;
    int runs = 0;
    for (int n : {2, 3}) {
        const int block_dim = 1 << n;
        for (int trial = 0; trial < 6; ++trial) {
            DensityMatrix rho = random_qubit_state(rng);
            DensityMatrix sigma = random_qubit_state(rng);
            ChoiMatrix lam = random_cptp(block_dim, 2 + trial % 3, rng);
            CatalystState tau = build_catalyst(rho, lam, n);
            ProtocolTrace trace = run_protocol(rho, tau, lam, sigma);
            worst = std::max(worst, trace.catalyst_restoration_error);
            ++runs;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "worst restoration error %.2e over %d runs", worst, runs);
    detail = buf;
    return worst <= 1e-10;
}

// --- criterion 5: decoupling bound at n = 3, m = 2 ---------------------------

bool criterion_decoupling(std::string& detail) {
    const int n = 3, m = 2;
    const double delta = 1.0 - static_cast<double>(m) / n;
    double worst_gap = -1, worst_choi = 0;
    std::vector<std::pair<double, double>> pairs = {{0.8, 0.4}, {0.6, 0.6}};
    for (auto [x_from, x_to] : pairs) {
        DensityMatrix rho = density_from_bloch({x_from, 0, 0});
        DensityMatrix sigma = density_from_bloch({x_to, 0, 0});
        BlockChannelResult block = find_block_channel(rho, sigma, n, m, 0);
        CatalystState tau = build_catalyst(rho, block.lambda, n);
        ProtocolTrace trace = run_protocol(rho, tau, block.lambda, sigma);
        double bound = 2.0 * (delta + block.epsilon_achieved) + 1e-8;
        worst_gap = std::max(worst_gap, trace.decoupling_error - bound);

        ChoiMatrix protocol = compose_protocol_choi(block.lambda, n, m);
        const int joint = protocol.in_dim;
        double res = max_residual(
            verify_channel(protocol, choi_constraints(TheorySpec::coherence(joint),
                                                      joint, joint)));
        worst_choi = std::max(worst_choi, res);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "bound slack %.2e, composed-channel constraint residual %.2e",
                  -worst_gap, worst_choi);
    detail = buf;
    return worst_gap <= 0 && worst_choi < 1e-9;
}

// --- criterion 6: finite lists defeated by a near-free pure state ------------

bool criterion_defeat(std::string& detail) {
    DensityMatrix rho = density_from_bloch({0.9, 0, 0});
    Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
    e0[0] = 1;
    e1[1] = 1;
    PureState phi_f(e0), phi_perp(e1);

    MonotoneEntry m_cr{"c_r", [](const DensityMatrix& r) { return c_r(r); }, true, true};
    MonotoneEntry m_rel{"rel_entropy_coherence",
                        [](const DensityMatrix& r) { return rel_entropy_coherence(r); },
                        true, true};
    std::vector<MonotoneList> lists = {{m_cr}, {m_rel}, {m_cr, m_rel}};

    bool ok = true;
    double min_eps = 1, min_residual_seen = 1e30;
    for (const MonotoneList& list : lists) {
        DefeatResult d = find_defeating_epsilon(list, rho, phi_f, phi_perp);
        if (d.epsilon <= 0) ok = false;
        DensityMatrix psi(d.psi);
        for (const MonotoneEntry& e : list)
            if (e.eval(rho) < e.eval(psi) - 1e-9) ok = false;

        Verdict v = decide_coherence_qubit(rho, psi);
        bool delta_witness = false;
        for (const auto& w : v.witnesses)
            if (w.monotone == "c_delta_r") delta_witness = true;
        if (v.outcome != Outcome::NotConvertible || !delta_witness) ok = false;

        BlockedReport b = verify_blocked(rho, d.psi, TheorySpec::coherence());
        if (!(b.oracle_residual > 0.01)) ok = false;
        min_eps = std::min(min_eps, d.epsilon);
        min_residual_seen = std::min(min_residual_seen, b.oracle_residual);
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "min epsilon %.4f, min residual %.3f over 3 lists",
                  min_eps, min_residual_seen);
    detail = buf;
    return ok;
}

// --- criterion 7: total order for the ball theory, incomparability elsewhere -

bool criterion_total_order(std::string& detail) {
    bool ok = true;
    for (double t : {0.0, 0.3, 0.7}) {
        TotalOrderReport r = check_total_order(TheorySpec::totally_ordered_ball(t),
                                               1000, 11);
        if (r.ordered_fraction != 1.0) ok = false;
    }
    for (const TheorySpec& th : {TheorySpec::coherence(), TheorySpec::imaginarity(),
                                 TheorySpec::asymmetry_qubit()}) {
        TotalOrderReport r = check_total_order(th, 1000, 11);
        if (!r.incomparable_witness.has_value()) ok = false;
    }

    // Distance-to-ball closed form and its constancy on pure states.
    std::mt19937_64 rng(707);
    TheorySpec ball = TheorySpec::totally_ordered_ball(0.3);
    double worst_formula = 0;
    for (int i = 0; i < 200; ++i) {
        DensityMatrix rho = random_qubit_state(rng);
        double expect = std::max(bloch_from_density(rho).norm() - 0.3, 0.0);
        worst_formula = std::max(
            worst_formula, std::abs(nearest_free_distance(rho, ball).value - expect));
    }
    if (worst_formula > 1e-12) ok = false;
    double first = -1, worst_pure = 0;
    for (int i = 0; i < 100; ++i) {
        double v = nearest_free_distance(DensityMatrix(random_pure_state(2, rng)),
                                         ball).value;
        if (first < 0) first = v;
        worst_pure = std::max(worst_pure, std::abs(v - first));
    }
    if (worst_pure > 1e-12) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "formula gap %.1e, pure-state spread %.1e",
                  worst_formula, worst_pure);
    detail = buf;
    return ok;
}

// --- criterion 8: reference-state residual mirrors the exact decider ---------

bool criterion_r_nu(std::string& detail) {
    std::mt19937_64 rng(808);
    int agree = 0;
    const int total = 50;
    TheorySpec th = TheorySpec::coherence();
    for (int i = 0; i < total; ++i) {
        DensityMatrix rho = random_qubit_state(rng);
        DensityMatrix sig = random_qubit_state(rng);
        bool convertible =
            decide_coherence_qubit(rho, sig).outcome == Outcome::Convertible;
        RNuResult r = r_nu(rho, sig, th, 13 * i + 1);
        if ((r.value < 1e-4) == convertible) ++agree;
    }
    detail = std::to_string(agree) + "/" + std::to_string(total) + " pairs consistent";
    return agree == total;
}

int report(const char* name, bool (*fn)(std::string&)) {
    auto start = Clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("[%s] %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", name, detail.c_str(),
                secs);
    std::fflush(stdout);
    return ok ? 0 : 1;
}

}  // namespace

int main() {
    int failures = 0;
    failures += report("monotonicity under sampled free channels", criterion_monotonicity);
    failures += report("decider-oracle agreement", criterion_decider_oracle);
    failures += report("thermal decider vs Gibbs-stochastic brute force", criterion_thermal);
    failures += report("exact catalyst restoration", criterion_restoration);
    failures += report("decoupling bound and composed-channel feasibility", criterion_decoupling);
    failures += report("finite monotone lists defeated by near-free pure states", criterion_defeat);
    failures += report("total order in the ball theory only", criterion_total_order);
    failures += report("reference-residual test mirrors the exact decider", criterion_r_nu);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
