#pragma once

#include <json.hpp>

#include "resmono/catalysis.hpp"
#include "resmono/convert.hpp"
#include "resmono/limits.hpp"

namespace resmono {

using Json = nlohmann::json;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// State documents: {"bloch": [x, y, z]} or
// {"matrix": [[{"re":..,"im":..}, ...], ...], "factors": [d1, d2, ...]}.
DensityMatrix state_from_json(const Json& doc);
Json state_to_json(const DensityMatrix& rho);

// Theory documents: {"kind": "...", "params": {...}}.
TheorySpec theory_from_json(const Json& doc);
Json theory_to_json(const TheorySpec& th);

Json complex_matrix_to_json(const Matrix& m);
Matrix complex_matrix_from_json(const Json& doc);

Json monotone_reports_to_json(const std::vector<MonotoneReport>& reports);
Json verdict_to_json(const Verdict& v);
Json oracle_result_to_json(const OracleResult& r, bool emit_channel);
Json protocol_trace_to_json(const ProtocolTrace& t, const CatalyticCheck& check,
                            double epsilon_achieved, int n, int m,
                            bool emit_states);
Json defeat_result_to_json(const DefeatResult& d, const BlockedReport& b);
Json total_order_report_to_json(const TotalOrderReport& r);

}  // namespace resmono
