#include "crsphere/solver.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace crsphere {

namespace {

constexpr double kAscentSlack = 1e-10;

double dual_exponent(double p) { return p / (p - 1.0); }

void require_subcritical(const KernelOperator& op, double p, bool strict) {
    const double pc = critical_exponent(op.spec());
    if (strict ? !(p > pc) : !(p >= pc - 1e-12))
        throw std::domain_error("exponent p = " + std::to_string(p) +
                                (strict ? " is not above" : " is below") +
                                " the critical exponent " + std::to_string(pc));
}

RealVector initial_values(const KernelOperator& op, const SolverInit& init) {
    const QuadratureRule& rule = *op.rule();
    RealVector u(rule.size());
    switch (init.kind) {
        case InitKind::Constant:
            u.setOnes();
            break;
        case InitKind::Perturbed:
            for (int i = 0; i < rule.size(); ++i)
                u(i) = 1.0 + init.amplitude * rule.points(i, 0).real();
            break;
        case InitKind::Random: {
            std::mt19937_64 gen(init.seed);
            std::uniform_real_distribution<double> unif(-1.0, 1.0);
            const double a = std::min(std::fabs(init.amplitude), 0.9);
            for (int i = 0; i < rule.size(); ++i) u(i) = 1.0 + a * unif(gen);
            break;
        }
    }
    if (u.minCoeff() < 0.0) throw std::domain_error("solver init: negative starting field");
    return u;
}

struct IterationState {
    RealVector u;     // ||u||_p = 1
    RealVector au;    // A u
    double quotient;  // ||A u||_{p'}
};

double sup_residual(const IterationState& s, double p) {
    const RealVector up = s.u.array().pow(p - 1.0).matrix();
    const double denom = s.quotient * up.cwiseAbs().maxCoeff();
    return (s.au - s.quotient * up).cwiseAbs().maxCoeff() / denom;
}

std::pair<DensityField, SolveReport> solve_from(const KernelOperator& op,
                                                const SolverConfig& cfg, RealVector u0) {
    require_subcritical(op, cfg.p, /*strict=*/true);
    if (!(cfg.damping > 0.0) || !(cfg.damping <= 1.0))
        throw std::domain_error("solve: damping must lie in (0, 1]");

    const auto t0 = std::chrono::steady_clock::now();
    const QuadratureRule& rule = *op.rule();
    const double p = cfg.p;
    const double pp = dual_exponent(p);
    const double inv_exp = 1.0 / (p - 1.0);

    SolveReport rep;
    rep.p = p;
    rep.damping_used = cfg.damping;
    double damping = cfg.damping;

    auto advance = [&](const IterationState& s) {
        if (s.au.minCoeff() <= 0.0)
            throw std::runtime_error("solve: kernel application produced a non-positive value "
                                     "(kernel-matrix defect)");
        RealVector next = s.au.array().pow(inv_exp).matrix();
        next /= lp_norm(rule, next, p);
        if (damping < 1.0) {
            next = (1.0 - damping) * s.u + damping * next;
            next /= lp_norm(rule, next, p);
        }
        IterationState out;
        out.u = std::move(next);
        out.au = op.apply(out.u);
        out.quotient = lp_norm(rule, out.au, pp);
        return out;
    };

    IterationState state;
    state.u = std::move(u0);
    state.u /= lp_norm(rule, state.u, p);
    state.au = op.apply(state.u);
    state.quotient = lp_norm(rule, state.au, pp);
    rep.functional_trace.push_back(state.quotient);
    rep.iterations = 1;
    rep.residual = sup_residual(state, p);

    while (rep.residual > cfg.tol_residual && rep.iterations < cfg.max_iter) {
        IterationState next = advance(state);
        if (next.quotient < state.quotient - kAscentSlack) {
            if (damping == 1.0) {
                damping = 0.5;  // guarded fallback; a second violation is a defect
                rep.damping_used = damping;
                next = advance(state);
            }
            if (next.quotient < state.quotient - kAscentSlack)
                throw std::runtime_error("solve: functional decreased by more than the ascent "
                                         "slack; aborting as a defect");
        }
        state = std::move(next);
        rep.functional_trace.push_back(state.quotient);
        ++rep.iterations;
        rep.residual = sup_residual(state, p);
    }
    rep.converged = rep.residual <= cfg.tol_residual;
    rep.lambda_p_hat = state.quotient;

    DensityField u;
    u.rule = op.rule();
    u.values = state.u;

    const ComplexVector mom = moment(u, p);
    const double up_int = integrate(rule, RealVector(state.u.array().pow(p).matrix()));
    rep.moment_norm = mom.norm() / up_int;
    const double mean = integrate(rule, state.u) / total_measure(rule.family, rule.dim);
    rep.dist_to_constant = lp_norm(rule, RealVector(state.u.array() - mean), p);
    rep.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(u), rep};
}

}  // namespace

double functional(const KernelOperator& op, const RealVector& f, double p) {
    require_subcritical(op, p, /*strict=*/false);
    const QuadratureRule& rule = *op.rule();
    const double nf = lp_norm(rule, f, p);
    if (!(nf > 0.0)) throw std::domain_error("functional: zero field");
    return lp_norm(rule, op.apply(f), dual_exponent(p)) / nf;
}

double functional(const KernelOperator& op, const DensityField& f, double p) {
    return functional(op, f.values, p);
}

std::pair<DensityField, SolveReport> solve(const KernelOperator& op, const SolverConfig& cfg) {
    return solve_from(op, cfg, initial_values(op, cfg.init));
}

std::vector<SolveReport> continuation(const KernelOperator& op, const std::vector<double>& p_list,
                                      const SolverConfig& base_cfg) {
    if (p_list.empty()) throw std::domain_error("continuation: empty exponent list");
    for (std::size_t i = 0; i + 1 < p_list.size(); ++i)
        if (!(p_list[i] > p_list[i + 1]))
            throw std::domain_error("continuation: p_list must be strictly decreasing");

    std::vector<SolveReport> reports;
    reports.reserve(p_list.size());
    SolverConfig cfg = base_cfg;
    RealVector warm;
    for (double p : p_list) {
        cfg.p = p;
        auto [u, rep] = (warm.size() == 0) ? solve(op, cfg) : solve_from(op, cfg, warm);
        warm = u.values;
        reports.push_back(std::move(rep));
    }
    return reports;
}

ComplexVector moment(const DensityField& u, double p) {
    if (u.values.minCoeff() < 0.0) throw std::domain_error("moment: field must be nonnegative");
    const QuadratureRule& rule = *u.rule;
    const RealVector up = u.values.array().pow(p).matrix();
    const RealVector wup = rule.weights.cwiseProduct(up);
    ComplexVector m(rule.points.cols());
    for (int c = 0; c < rule.points.cols(); ++c) {
        const RealVector re = rule.points.col(c).real().cwiseProduct(wup);
        const RealVector im = rule.points.col(c).imag().cwiseProduct(wup);
        m(c) = Complex(pairwise_sum(re), pairwise_sum(im));
    }
    return m;
}

bool second_variation_check(const KernelOperator& op, const DensityField& u, double p,
                            const RealVector& f_in) {
    const QuadratureRule& rule = *u.rule;
    if (u.values.minCoeff() < 1e-12 * u.values.maxCoeff())
        throw std::domain_error("second_variation_check: field has (near-)zeros; u^{p-2} "
                                "ill-posed");
    const double lambda_hat = functional(op, u.values, p);

    // project onto int u^{p-1} f = 0
    const RealVector up1 = u.values.array().pow(p - 1.0).matrix();
    const double coef = weighted_inner(rule, up1, f_in) / weighted_inner(rule, up1, u.values);
    const RealVector f = f_in - coef * u.values;

    const double lhs = op.quad_form(f, f);
    const RealVector up2f2 =
        RealVector(u.values.array().pow(p - 2.0).matrix()).cwiseProduct(f.cwiseAbs2());
    const double rhs = (p - 1.0) * lambda_hat * integrate(rule, up2f2);
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
    return lhs <= rhs + 1e-8 * scale;
}

R2VPointCheck r2v_pointcheck(const KernelOperator& dist_op, const KernelOperator& re_op,
                             const DensityField& u, double best_c) {
    const KernelSpec& spec = dist_op.spec();
    if (spec.family != SphereFamily::CRSphere)
        throw std::invalid_argument("r2v_pointcheck: CR family required");
    const QuadratureRule& rule = *u.rule;
    const double m1 = spec.dim + 1.0;
    const double lambda = spec.lambda;
    const double low = lambda / (4.0 * m1 - lambda);
    const double gap = (2.0 * m1 - lambda) / (4.0 * m1 - lambda);

    const double lhs = re_op.quad_form(u.values, u.values);
    const double mean = integrate(rule, u.values) / total_measure(rule.family, rule.dim);
    const RealVector centered = u.values.array() - mean;
    const double rhs = low * dist_op.quad_form(u.values, u.values) +
                       best_c * gap * dist_op.quad_form(centered, centered);
    return {lhs, rhs};
}

double pair_collapse(const KernelOperator& op, const SolverConfig& cfg) {
    require_subcritical(op, cfg.p, /*strict=*/true);
    const QuadratureRule& rule = *op.rule();
    const double p = cfg.p;
    const double inv_exp = 1.0 / (p - 1.0);

    RealVector f = initial_values(op, cfg.init);
    f /= lp_norm(rule, f, p);
    RealVector g = RealVector::Ones(rule.size());
    g /= lp_norm(rule, g, p);

    auto half_step = [&](const RealVector& from) {
        const RealVector af = op.apply(from);
        if (af.minCoeff() <= 0.0)
            throw std::runtime_error("pair_collapse: non-positive kernel application");
        RealVector next = af.array().pow(inv_exp).matrix();
        return RealVector(next / lp_norm(rule, next, p));
    };

    for (int it = 0; it < cfg.max_iter; ++it) {
        const RealVector g_next = half_step(f);  // g^{p-1} = A f
        const RealVector f_next = half_step(g_next);
        const double delta = lp_norm(rule, RealVector(f_next - f), p) +
                             lp_norm(rule, RealVector(g_next - g), p);
        f = f_next;
        g = g_next;
        if (delta <= cfg.tol_residual) break;
    }
    return lp_norm(rule, RealVector(f - g), p);
}

}  // namespace crsphere
