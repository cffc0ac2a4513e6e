#pragma once

#include "crsphere/kernel.hpp"
#include "crsphere/quadrature.hpp"
#include "crsphere/types.hpp"

#include <cstdint>
#include <vector>

namespace crsphere {

enum class InitKind { Constant, Perturbed, Random };

struct SolverInit {
    InitKind kind = InitKind::Constant;
    double amplitude = 0.3;  // Perturbed: 1 + amplitude * Re xi_1
    std::uint64_t seed = 1;  // Random: 1 + amplitude * uniform(-1,1) per node
};

struct SolverConfig {
    double p = 1.5;
    SolverInit init;
    double tol_residual = 1e-10;
    int max_iter = 1000;
    double damping = 1.0;  // in (0,1]; dropped to 0.5 once on an ascent violation
};

struct SolveReport {
    double p = 0.0;
    double lambda_p_hat = 0.0;
    int iterations = 0;
    double residual = 0.0;
    double moment_norm = 0.0;       // |int u^p xi d(sigma)| / int u^p d(sigma)
    double dist_to_constant = 0.0;  // ||u - mean(u)||_p at ||u||_p = 1
    std::vector<double> functional_trace;
    double wall_time_ms = 0.0;
    bool converged = false;
    double damping_used = 1.0;
};

/// ||A f||_{p'} / ||f||_p, p' = p/(p-1). Defined for p >= critical exponent.
double functional(const KernelOperator& op, const RealVector& f, double p);
double functional(const KernelOperator& op, const DensityField& f, double p);

/// Nonnegative fixed-point iteration for A u = Lambda u^{p-1}: alternate the
/// kernel application, the pointwise power 1/(p-1) and L^p normalization.
/// Subcritical p (> critical exponent) required. Returns u with ||u||_p = 1;
/// lambda_p_hat is the quotient sup estimate.
std::pair<DensityField, SolveReport> solve(const KernelOperator& op, const SolverConfig& cfg);

/// Warm-started solves along a strictly decreasing list of exponents.
std::vector<SolveReport> continuation(const KernelOperator& op, const std::vector<double>& p_list,
                                      const SolverConfig& base_cfg);

/// M = int u(xi)^p xi d(sigma)(xi), componentwise.
ComplexVector moment(const DensityField& u, double p);

/// Second-variation bound at a converged maximizer: after projecting f to
/// satisfy int u^{p-1} f = 0, checks
///   <A f, f>  <=  (p-1) Lambda int u^{p-2} f^2 d(sigma)
/// with the Euler-Lagrange normalization (Lambda carries the unit-norm
/// scaling). True iff the inequality holds with 1e-8 relative slack.
bool second_variation_check(const KernelOperator& op, const DensityField& u, double p,
                            const RealVector& f);

struct R2VPointCheck {
    double lhs;  // double integral of Re(xi.conj(eta)) K(xi,eta) u(xi) u(eta)
    double rhs;  // modal lower bound built from the equality constant and best C
};

/// Evaluates both sides of the spectral-gap inequality at a discrete field.
R2VPointCheck r2v_pointcheck(const KernelOperator& dist_op, const KernelOperator& re_op,
                             const DensityField& u, double best_c);

/// Alternating two-field maximization of <A f, g> with unit L^p norms
/// (g^{p-1} = A f, f^{p-1} = A g); returns ||f - g||_p at convergence.
double pair_collapse(const KernelOperator& op, const SolverConfig& cfg);

}  // namespace crsphere
