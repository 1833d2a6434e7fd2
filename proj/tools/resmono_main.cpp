// resmono: evaluate resource monotones, decide qubit convertibility, run the
// channel oracle, and exercise the catalytic protocol from the command line.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "resmono/serialize.hpp"

namespace {

using namespace resmono;

// Inline JSON if the argument looks like a document, else a file path.
Json load_doc(const std::string& arg, const std::string& what) {
    std::string text = arg;
    if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
        std::ifstream in(arg);
        if (!in) throw ParseError(what + ": cannot open file " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

void print_table(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            print_table(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            print_table(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << "\t" << j.dump() << "\n";
    }
}

void emit(const Json& j, bool table) {
    if (table)
        print_table(j, "", std::cout);
    else
        std::cout << j.dump(2) << "\n";
}

MonotoneEntry monotone_by_name(const std::string& name) {
    auto wrap = [](double (*f)(const DensityMatrix&)) {
        return [f](const DensityMatrix& rho) { return f(rho); };
    };
    if (name == "c_r") return {"c_r", wrap(&c_r), true, true};
    if (name == "c_delta_r") return {"c_delta_r", wrap(&c_delta_r), false, true};
    if (name == "rel_ent" || name == "rel_entropy_coherence")
        return {"rel_entropy_coherence", wrap(&rel_entropy_coherence), true, true};
    if (name == "i1") return {"i1", wrap(&i1), true, true};
    if (name == "i2") return {"i2", wrap(&i2), false, true};
    if (name == "a1") return {"a1", wrap(&a1), false, true};
    if (name == "a2") return {"a2", wrap(&a2), false, true};
    throw ParseError("monotones: unknown name \"" + name + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resource monotones, convertibility deciders, channel oracle"};
    app.require_subcommand(1);

    unsigned seed = 0;
    if (const char* env = std::getenv("RESMONO_SEED")) seed = std::strtoul(env, nullptr, 10);
    double tol = kDecideTol;
    bool as_table = false, as_json = true;
    app.add_option("--seed", seed, "RNG seed for oracle restarts and sampling");
    app.add_option("--tol", tol, "decision tolerance");
    app.add_flag("--table", as_table, "render output as key/value lines");
    app.add_flag("--json", as_json, "JSON output (default)");

    std::string theory_arg, state_arg, from_arg, to_arg, monotones_arg;
    int n = 3, m = 2, samples = 1000, restarts = 8, iters = 1500, depth = 30;
    double oracle_tol = 1e-7;
    bool emit_channel = false, emit_trace = false;

    auto* cmd_eval = app.add_subcommand("eval", "evaluate the theory's monotones on a state");
    cmd_eval->add_option("--theory", theory_arg)->required();
    cmd_eval->add_option("--state", state_arg)->required();

    auto* cmd_decide = app.add_subcommand("decide", "decide single-copy convertibility");
    cmd_decide->add_option("--theory", theory_arg)->required();
    cmd_decide->add_option("--from", from_arg)->required();
    cmd_decide->add_option("--to", to_arg)->required();

    auto* cmd_oracle = app.add_subcommand("oracle", "minimize the free-channel output distance");
    cmd_oracle->add_option("--theory", theory_arg)->required();
    cmd_oracle->add_option("--from", from_arg)->required();
    cmd_oracle->add_option("--to", to_arg)->required();
    cmd_oracle->add_option("--restarts", restarts);
    cmd_oracle->add_option("--iters", iters);
    cmd_oracle->add_option("--depth", depth);
    cmd_oracle->add_option("--oracle-tol", oracle_tol);
    cmd_oracle->add_flag("--emit-channel", emit_channel);

    auto* cmd_cat = app.add_subcommand("catalysis", "run the three-step catalytic protocol");
    cmd_cat->add_option("--from", from_arg)->required();
    cmd_cat->add_option("--to", to_arg)->required();
    cmd_cat->add_option("--n", n);
    cmd_cat->add_option("--m", m);
    cmd_cat->add_flag("--emit-trace", emit_trace);

    auto* cmd_t1 = app.add_subcommand("theorem1", "defeat a finite monotone list with a near-free pure state");
    cmd_t1->add_option("--theory", theory_arg)->required();
    cmd_t1->add_option("--state", state_arg)->required();
    cmd_t1->add_option("--monotones", monotones_arg)->required();

    auto* cmd_to = app.add_subcommand("total-order", "fraction of comparable random qubit pairs");
    cmd_to->add_option("--theory", theory_arg)->required();
    cmd_to->add_option("--samples", samples);

    auto* cmd_val = app.add_subcommand("validate", "parse and validate documents");
    cmd_val->add_option("--theory", theory_arg);
    cmd_val->add_option("--state", state_arg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_eval->parsed()) {
            TheorySpec th = theory_from_json(load_doc(theory_arg, "theory"));
            DensityMatrix rho = state_from_json(load_doc(state_arg, "state"));
            emit(monotone_reports_to_json(evaluate_monotones(rho, th)), as_table);
            return 0;
        }
        if (cmd_decide->parsed()) {
            TheorySpec th = theory_from_json(load_doc(theory_arg, "theory"));
            DensityMatrix rho = state_from_json(load_doc(from_arg, "from"));
            DensityMatrix sig = state_from_json(load_doc(to_arg, "to"));
            OracleBudget budget;
            budget.seed = seed;
            Verdict v = decide(th, rho, sig, budget);
            emit(verdict_to_json(v), as_table);
            return v.outcome == Outcome::Undecided ? 2 : 0;
        }
        if (cmd_oracle->parsed()) {
            TheorySpec th = theory_from_json(load_doc(theory_arg, "theory"));
            DensityMatrix rho = state_from_json(load_doc(from_arg, "from"));
            DensityMatrix sig = state_from_json(load_doc(to_arg, "to"));
            OracleBudget budget{iters, restarts, oracle_tol, depth, seed};
            OracleResult res = min_residual(rho, sig, th, budget);
            emit(oracle_result_to_json(res, emit_channel), as_table);
            return res.converged ? 0 : 2;
        }
        if (cmd_cat->parsed()) {
            DensityMatrix rho = state_from_json(load_doc(from_arg, "from"));
            DensityMatrix sig = state_from_json(load_doc(to_arg, "to"));
            if (m > n) throw PreconditionError("catalysis: m must not exceed n");
            BlockChannelResult block = find_block_channel(rho, sig, n, m, seed);
            CatalystState tau = build_catalyst(rho, block.lambda, n);
            ProtocolTrace trace = run_protocol(rho, tau, block.lambda, sig);
            CatalyticCheck check = catalytic_monotone_check(rho, tau, trace);
            emit(protocol_trace_to_json(trace, check, block.epsilon_achieved, n, m,
                                        emit_trace),
                 as_table);
            return 0;
        }
        if (cmd_t1->parsed()) {
            TheorySpec th = theory_from_json(load_doc(theory_arg, "theory"));
            DensityMatrix rho = state_from_json(load_doc(state_arg, "state"));
            MonotoneList list;
            std::stringstream names(monotones_arg);
            for (std::string tok; std::getline(names, tok, ',');)
                if (!tok.empty()) list.push_back(monotone_by_name(tok));
            // Boundary free pure state and its orthogonal complement.
            Vector e0 = Vector::Zero(2), e1 = Vector::Zero(2);
            e0[0] = 1;
            e1[1] = 1;
            PureState phi_f(e0), phi_perp(e1);
            DefeatResult d = find_defeating_epsilon(list, rho, phi_f, phi_perp);
            OracleBudget budget;
            budget.seed = seed;
            BlockedReport b = verify_blocked(rho, d.psi, th, budget);
            emit(defeat_result_to_json(d, b), as_table);
            return 0;
        }
        if (cmd_to->parsed()) {
            TheorySpec th = theory_from_json(load_doc(theory_arg, "theory"));
            emit(total_order_report_to_json(check_total_order(th, samples, seed)),
                 as_table);
            return 0;
        }
        if (cmd_val->parsed()) {
            if (theory_arg.empty() && state_arg.empty())
                throw ParseError("validate: pass --theory and/or --state");
            Json out = Json::object();
            if (!theory_arg.empty())
                out["theory"] = theory_to_json(theory_from_json(load_doc(theory_arg, "theory")));
            if (!state_arg.empty())
                out["state"] = state_to_json(state_from_json(load_doc(state_arg, "state")));
            out["valid"] = true;
            emit(out, as_table);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << Json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 1;
}
