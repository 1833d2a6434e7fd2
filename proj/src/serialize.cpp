#include "resmono/serialize.hpp"

#include <cmath>

namespace resmono {

namespace {

Complex complex_from_json(const Json& doc, const std::string& path) {
    if (!doc.is_object() || !doc.contains("re") || !doc.contains("im"))
        throw ParseError(path + ": complex entries must be {\"re\":..,\"im\":..}");
    return {doc["re"].get<double>(), doc["im"].get<double>()};
}

Json complex_to_json(const Complex& c) {
    return Json{{"re", c.real()}, {"im", c.imag()}};
}

}  // namespace

Matrix complex_matrix_from_json(const Json& doc) {
    if (!doc.is_array() || doc.empty())
        throw ParseError("matrix: expected a non-empty array of rows");
    const size_t rows = doc.size();
    const size_t cols = doc[0].size();
    Matrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!doc[i].is_array() || doc[i].size() != cols)
            throw ParseError("matrix[" + std::to_string(i) + "]: ragged row");
        for (size_t j = 0; j < cols; ++j)
            m(i, j) = complex_from_json(
                doc[i][j], "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    return m;
}

Json complex_matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(complex_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

DensityMatrix state_from_json(const Json& doc) {
    if (!doc.is_object())
        throw ParseError("state: expected an object");
    if (doc.contains("bloch")) {
        const auto& b = doc["bloch"];
        if (!b.is_array() || b.size() != 3)
            throw ParseError("state.bloch: expected [rx, ry, rz]");
        return density_from_bloch(
            {b[0].get<double>(), b[1].get<double>(), b[2].get<double>()});
    }
    if (doc.contains("matrix")) {
        Matrix m = complex_matrix_from_json(doc["matrix"]);
        std::vector<int> factors;
        if (doc.contains("factors"))
            factors = doc["factors"].get<std::vector<int>>();
        return DensityMatrix(m, factors);
    }
    throw ParseError("state: needs either \"bloch\" or \"matrix\"");
}

Json state_to_json(const DensityMatrix& rho) {
    return Json{{"matrix", complex_matrix_to_json(rho.matrix())},
                {"factors", rho.factors()}};
}

TheorySpec theory_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("kind"))
        throw ParseError("theory: needs a \"kind\" field");
    std::string kind = doc["kind"].get<std::string>();
    Json params = doc.value("params", Json::object());
    if (kind == "Coherence")
        return TheorySpec::coherence(params.value("dim", 2));
    if (kind == "Imaginarity")
        return TheorySpec::imaginarity(params.value("dim", 2));
    if (kind == "AsymmetryQubit")
        return TheorySpec::asymmetry_qubit(params.value("omega", 1.0));
    if (kind == "ThermalQubit") {
        if (!params.contains("gibbs_diag"))
            throw ParseError("theory.params.gibbs_diag: required for ThermalQubit");
        auto g = params["gibbs_diag"].get<std::vector<double>>();
        if (g.size() != 2)
            throw ParseError("theory.params.gibbs_diag: expected [g0, g1]");
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = g[0];
        m(1, 1) = g[1];
        return TheorySpec::thermal_qubit(DensityMatrix(m));
    }
    if (kind == "TotallyOrderedBall") {
        if (!params.contains("t"))
            throw ParseError("theory.params.t: required for TotallyOrderedBall");
        return TheorySpec::totally_ordered_ball(params["t"].get<double>());
    }
    if (kind == "PurityUnital")
        return TheorySpec::purity_unital(params.value("dim", 2));
    if (kind == "PPT") {
        auto dims = params.value("dims", std::vector<int>{2, 2});
        if (dims.size() != 2)
            throw ParseError("theory.params.dims: expected [dim_a, dim_b]");
        return TheorySpec::ppt(dims[0], dims[1]);
    }
    throw ParseError("theory.kind: unknown kind \"" + kind + "\"");
}

Json theory_to_json(const TheorySpec& th) {
    Json params = Json::object();
    switch (th.kind) {
        case TheoryKind::Coherence:
        case TheoryKind::Imaginarity:
        case TheoryKind::PurityUnital:
            params["dim"] = th.dim;
            break;
        case TheoryKind::AsymmetryQubit:
            params["omega"] = th.omega;
            break;
        case TheoryKind::ThermalQubit:
            params["gibbs_diag"] = {(*th.gibbs)(0, 0).real(),
                                    (*th.gibbs)(1, 1).real()};
            break;
        case TheoryKind::TotallyOrderedBall:
            params["t"] = th.t;
            break;
        case TheoryKind::PPT:
            params["dims"] = {th.ppt_dim_a, th.ppt_dim_b};
            break;
    }
    return Json{{"kind", kind_name(th.kind)}, {"params", params}};
}

Json monotone_reports_to_json(const std::vector<MonotoneReport>& reports) {
    Json out = Json::array();
    for (const auto& r : reports) {
        double v = r.value;
        Json jv;
        if (std::isinf(v))
            jv = "inf";
        else
            jv = v;
        out.push_back(Json{{"name", r.name},
                           {"value", jv},
                           {"continuous", r.continuous},
                           {"faithful", r.faithful}});
    }
    return out;
}

Json verdict_to_json(const Verdict& v) {
    Json witnesses = Json::array();
    for (const auto& w : v.witnesses) {
        auto num = [](double x) {
            return std::isinf(x) ? Json("inf") : Json(x);
        };
        witnesses.push_back(Json{{"monotone", w.monotone},
                                 {"value_from", num(w.value_from)},
                                 {"value_to", num(w.value_to)}});
    }
    Json out{{"outcome", outcome_name(v.outcome)},
             {"witnesses", witnesses},
             {"tolerance", v.tolerance}};
    if (v.oracle_residual >= 0) out["oracle_residual"] = v.oracle_residual;
    return out;
}

Json oracle_result_to_json(const OracleResult& r, bool emit_channel) {
    Json out{{"residual", r.residual},
             {"iterations", r.iterations},
             {"converged", r.converged},
             {"restarts_used", r.restarts_used},
             {"in_dim", r.choi.in_dim},
             {"out_dim", r.choi.out_dim}};
    if (emit_channel) out["choi"] = complex_matrix_to_json(r.choi.m);
    return out;
}

Json protocol_trace_to_json(const ProtocolTrace& t, const CatalyticCheck& check,
                            double epsilon_achieved, int n, int m,
                            bool emit_states) {
    double delta = 1.0 - static_cast<double>(m) / n;
    Json out{{"n", n},
             {"m", m},
             {"delta", delta},
             {"epsilon_achieved", epsilon_achieved},
             {"decoupling_error", t.decoupling_error},
             {"decoupling_bound", 2.0 * (delta + epsilon_achieved)},
             {"catalyst_restoration_error", t.catalyst_restoration_error},
             {"coherence_check",
              Json{{"ok", check.ok},
                   {"c_input", check.c_input},
                   {"c_output", check.c_output},
                   {"c_system_in", check.c_system_in},
                   {"c_system_out", check.c_system_out}}}};
    if (emit_states) {
        out["mu1"] = state_to_json(t.mu1);
        out["mu2"] = state_to_json(t.mu2);
        out["mu_sc"] = state_to_json(t.mu_sc);
    }
    return out;
}

Json defeat_result_to_json(const DefeatResult& d, const BlockedReport& b) {
    Json eps = Json::array();
    for (const auto& [name, e] : d.epsilons)
        eps.push_back(Json{{"monotone", name}, {"epsilon", e}});
    Json psi = Json::array();
    for (Eigen::Index i = 0; i < d.psi.amplitudes().size(); ++i)
        psi.push_back(complex_to_json(d.psi.amplitudes()[i]));
    return Json{{"epsilon", d.epsilon},
                {"psi_epsilon", psi},
                {"per_monotone", eps},
                {"inapplicable", d.inapplicable},
                {"p_min", b.p_min},
                {"oracle_residual", b.oracle_residual},
                {"oracle_blocked", b.oracle_blocked},
                {"decider_refutes", b.decider_refutes},
                {"analytic_note", b.analytic_note}};
}

Json total_order_report_to_json(const TotalOrderReport& r) {
    Json out{{"samples", r.samples},
             {"ordered", r.ordered},
             {"ordered_fraction", r.ordered_fraction}};
    if (r.incomparable_witness) {
        out["incomparable_pair"] =
            Json{{"from", state_to_json(r.incomparable_witness->first)},
                 {"to", state_to_json(r.incomparable_witness->second)}};
    }
    return out;
}

}  // namespace resmono
