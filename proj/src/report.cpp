#include "crsphere/report.hpp"

#include <cstdio>

namespace crsphere {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Json solve_report_json(const SolveReport& rep) {
    Json j;
    j["p"] = rep.p;
    j["lambda_p_hat"] = rep.lambda_p_hat;
    j["iterations"] = rep.iterations;
    j["residual"] = rep.residual;
    j["moment_norm"] = rep.moment_norm;
    j["dist_to_constant"] = rep.dist_to_constant;
    j["functional_trace"] = rep.functional_trace;
    j["wall_time"] = rep.wall_time_ms;
    j["converged"] = rep.converged;
    j["damping_used"] = rep.damping_used;
    return j;
}

Json report_envelope(Json config, Json results, Json residuals, bool pass, double wall_time_ms) {
    Json j;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["residuals"] = std::move(residuals);
    j["pass"] = pass;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

void write_continuation_csv(std::ostream& os, const std::vector<SolveReport>& reports) {
    os << "p,lambda_hat,residual,moment_norm,dist_to_constant,iterations,wall_time_ms\n";
    for (const SolveReport& r : reports) {
        os << format_real(r.p) << ',' << format_real(r.lambda_p_hat) << ','
           << format_real(r.residual) << ',' << format_real(r.moment_norm) << ','
           << format_real(r.dist_to_constant) << ',' << r.iterations << ','
           << format_real(r.wall_time_ms) << "\n";
    }
}

void write_eigs_csv(std::ostream& os, const std::vector<EigsRow>& rows) {
    os << "j,k,E,E_weighted,F,oracle_E,oracle_E_weighted,oracle_F,rel_err\n";
    for (const EigsRow& r : rows) {
        os << r.j << ',' << r.k << ',' << format_real(r.dist) << ',' << format_real(r.weighted)
           << ',' << format_real(r.re) << ',' << format_real(r.oracle_dist) << ','
           << format_real(r.oracle_weighted) << ',' << format_real(r.oracle_re) << ','
           << format_real(r.rel_err) << "\n";
    }
}

}  // namespace crsphere
