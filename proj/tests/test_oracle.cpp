#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "resmono/convert.hpp"
#include "resmono/monotones.hpp"
#include "resmono/oracle.hpp"

using namespace resmono;

namespace {

DensityMatrix diag_state(double p) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    return DensityMatrix(m);
}

// Kraus decomposition of a Choi matrix: J = sum_k |v_k><v_k| * ev_k with
// K_k(a, i) = sqrt(ev_k) v_k[i * out + a].
std::vector<Matrix> kraus_from_choi(const ChoiMatrix& j) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(j.m);
    std::vector<Matrix> out;
    for (int k = 0; k < j.m.rows(); ++k) {
        double ev = es.eigenvalues()[k];
        if (ev <= 1e-12) continue;
        Matrix kr(j.out_dim, j.in_dim);
        for (int i = 0; i < j.in_dim; ++i)
            for (int a = 0; a < j.out_dim; ++a)
                kr(a, i) = std::sqrt(ev) * es.eigenvectors()(i * j.out_dim + a, k);
        out.push_back(kr);
    }
    return out;
}

}  // namespace

TEST_CASE("identity Choi acts as the identity") {
    std::mt19937_64 rng(3);
    DensityMatrix rho = random_qubit_state(rng);
    CHECK(trace_distance(apply_choi(identity_choi(2), rho), rho) <= 1e-13);
}

TEST_CASE("replacement Choi prepares its target") {
    std::mt19937_64 rng(5);
    DensityMatrix mu = random_density_matrix(3, rng);
    DensityMatrix rho = random_qubit_state(rng);
    ChoiMatrix rep = replacement_choi(mu, 2);
    CHECK(trace_distance(apply_choi(rep, rho), mu) <= 1e-13);
}

TEST_CASE("apply_choi agrees with the Kraus decomposition") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        ChoiMatrix j = sample_free_channel(TheorySpec::coherence(), 2, rng);
        auto kraus = kraus_from_choi(j);
        // Completeness: sum K^dag K = I.
        Matrix comp = Matrix::Zero(2, 2);
        for (const Matrix& k : kraus) comp += k.adjoint() * k;
        CHECK((comp - Matrix::Identity(2, 2)).norm() <= 1e-8);

        DensityMatrix rho = random_qubit_state(rng);
        Matrix via_kraus = Matrix::Zero(2, 2);
        for (const Matrix& k : kraus) via_kraus += k * rho.matrix() * k.adjoint();
        CHECK(trace_norm(apply_choi(j, rho).matrix() - via_kraus) <= 1e-8);
    }
}

TEST_CASE("choi_from_kraus round-trips through apply") {
    // Dephasing channel from projector Kraus operators.
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    ChoiMatrix deph = choi_from_kraus({p0, p1}, 2, 2);
    std::mt19937_64 rng(11);
    DensityMatrix rho = random_qubit_state(rng);
    CHECK(trace_distance(apply_choi(deph, rho), dephase(rho)) <= 1e-13);
}

TEST_CASE("verify_channel: identity passes, dephasing passes, junk fails") {
    for (const TheorySpec& th : {TheorySpec::coherence(), TheorySpec::imaginarity(),
                                 TheorySpec::purity_unital()}) {
        CHECK(max_residual(verify_channel(identity_choi(2), th)) <= 1e-12);
    }

    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    ChoiMatrix deph = choi_from_kraus({p0, p1}, 2, 2);
    CHECK(max_residual(verify_channel(deph, TheorySpec::coherence())) <= 1e-12);

    std::mt19937_64 rng(13);
    Matrix g(4, 4);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    ChoiMatrix junk{g * g.adjoint(), 2, 2};
    auto residuals = verify_channel(junk, TheorySpec::coherence());
    bool tp_violated = false;
    for (const auto& r : residuals)
        if (r.name == "trace_preserving" && r.residual > 1e-3) tp_violated = true;
    CHECK(tp_violated);
}

TEST_CASE("oracle: identity conversion has zero residual") {
    std::mt19937_64 rng(17);
    DensityMatrix rho = random_qubit_state(rng);
    OracleResult r = min_residual(rho, rho, TheorySpec::coherence());
    CHECK(r.converged);
    CHECK(r.residual <= 1e-7);
}

TEST_CASE("oracle: free input cannot beat the free-set distance of the target") {
    DensityMatrix rho = diag_state(0.4);
    DensityMatrix sigma = density_from_bloch({0.6, 0, 0.1});
    OracleResult r = min_residual(rho, sigma, TheorySpec::coherence());
    double bound = nearest_free_distance(sigma, TheorySpec::coherence()).value;
    CHECK(r.residual >= bound - 1e-5);
}

TEST_CASE("oracle: pure plus state reaches its mixtures") {
    DensityMatrix plus = density_from_bloch({1, 0, 0});
    DensityMatrix target = density_from_bloch({0.5, 0, 0});
    REQUIRE(decide_coherence_qubit(plus, target).outcome == Outcome::Convertible);
    OracleResult r = min_residual(plus, target, TheorySpec::coherence());
    CHECK(r.converged);
    CHECK(r.residual < 1e-5);
}

TEST_CASE("oracle soundness: reported residual is achievable") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix rho = random_qubit_state(rng);
        DensityMatrix sigma = random_qubit_state(rng);
        OracleResult r = min_residual(rho, sigma, TheorySpec::coherence());
        double redo = trace_norm(
            apply_choi_raw(r.choi.m, rho.matrix(), 2, 2) - sigma.matrix());
        CHECK(std::abs(redo - r.residual) <= 1e-9);
        CHECK(max_residual(verify_channel(r.choi, TheorySpec::coherence())) <= 1e-7);
    }
}

TEST_CASE("oracle outputs respect the theory's monotones") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix rho = random_qubit_state(rng);
        DensityMatrix sigma = random_qubit_state(rng);
        OracleResult r = min_residual(rho, sigma, TheorySpec::coherence());
        if (!r.converged) continue;
        DensityMatrix out = apply_choi(r.choi, rho);
        CHECK(c_r(out) <= c_r(rho) + 1e-6);
        CHECK(c_delta_r(out) <= c_delta_r(rho) + 1e-6);
    }
}

TEST_CASE("r_nu never increases along sampled free channels") {
    std::mt19937_64 rng(29);
    TheorySpec th = TheorySpec::coherence();
    DensityMatrix nu = density_from_bloch({0.9, 0, 0});
    for (int trial = 0; trial < 3; ++trial) {
        DensityMatrix rho = random_qubit_state(rng);
        ChoiMatrix lam = sample_free_channel(th, 2, rng);
        DensityMatrix mapped = apply_choi(lam, rho);
        double before = r_nu(nu, rho, th).value;
        double after = r_nu(nu, mapped, th).value;
        CHECK(before >= after - 1e-5);
    }
}

TEST_CASE("full-rank barrier: no full-rank state lands on a pure resource") {
    DensityMatrix rho = density_from_bloch({0.9, 0, 0});  // eigenvalues 0.95, 0.05
    DensityMatrix psi = density_from_bloch({std::sqrt(0.5), 0, std::sqrt(0.5)});
    OracleResult r = min_residual(rho, psi, TheorySpec::coherence());
    CHECK(r.residual > 0.01);
}

TEST_CASE("sampled free channels are feasible to high precision") {
    std::mt19937_64 rng(31);
    for (const TheorySpec& th : {TheorySpec::coherence(), TheorySpec::imaginarity(),
                                 TheorySpec::asymmetry_qubit(),
                                 TheorySpec::purity_unital()}) {
        for (int i = 0; i < 5; ++i) {
            ChoiMatrix j = sample_free_channel(th, 2, rng);
            CHECK(max_residual(verify_channel(j, th)) <= 1e-9);
        }
    }
}

TEST_CASE("dephasing-covariant repair reaches machine-exact feasibility") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ConstraintSet cs = choi_constraints(TheorySpec::coherence(), 2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        // Near-feasible start: a feasible channel plus small noise.
        ChoiMatrix j = sample_free_channel(TheorySpec::coherence(), 2, rng);
        Matrix noise(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) noise(r, c) = 1e-6 * Complex(gauss(rng), gauss(rng));
        j.m += (noise + noise.adjoint()) / 2.0;
        ChoiMatrix fixed = repair_dio_exact(j);
        CHECK(max_residual(verify_channel(fixed, cs)) <= 1e-13);
    }
}

TEST_CASE("oracle rejects Choi dimensions beyond the search cap") {
    std::mt19937_64 rng(41);
    DensityMatrix big = random_density_matrix(16, rng);
    CHECK_THROWS_AS(
        min_residual(big, big, TheorySpec::coherence(16), OracleBudget{}),
        UnsupportedError);
}

TEST_CASE("apply_choi rejects mismatched dimensions") {
    std::mt19937_64 rng(43);
    DensityMatrix rho = random_density_matrix(3, rng);
    CHECK_THROWS_AS(apply_choi(identity_choi(2), rho), DimensionError);
}
