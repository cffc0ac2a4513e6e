#pragma once

#include "crsphere/solver.hpp"

#include "json.hpp"

#include <ostream>
#include <vector>

namespace crsphere {

using Json = nlohmann::ordered_json;

/// Locale-independent "%.17g".
std::string format_real(double x);

Json solve_report_json(const SolveReport& rep);

/// Fixed envelope every command emits:
/// { "config": ..., "results": ..., "residuals": ..., "pass": ..., "wall_time_ms": ... }.
Json report_envelope(Json config, Json results, Json residuals, bool pass, double wall_time_ms);

/// Columns: p, lambda_hat, residual, moment_norm, dist_to_constant, iterations, wall_time_ms.
void write_continuation_csv(std::ostream& os, const std::vector<SolveReport>& reports);

struct EigsRow {
    int j = 0, k = 0;
    double dist = 0.0, weighted = 0.0, re = 0.0;
    double oracle_dist = 0.0, oracle_weighted = 0.0, oracle_re = 0.0;
    double rel_err = 0.0;  // worst of the three oracle comparisons
};

void write_eigs_csv(std::ostream& os, const std::vector<EigsRow>& rows);

}  // namespace crsphere
