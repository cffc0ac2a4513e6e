#pragma once

#include "crsphere/quadrature.hpp"
#include "crsphere/types.hpp"

#include <optional>

namespace crsphere {

/// Distance: |1 - xi.conj(eta)|^{-lambda/2} (CR) or |xi - eta|^{-lambda} (real).
/// ReDistance: Re(xi.conj(eta)) |1 - xi.conj(eta)|^{-lambda/2} (CR only).
enum class KernelKind { Distance, ReDistance };

/// Diagonal treatment of the singular kernel.
///   Subtract: (Af)_i = sum_{r != i} K_ir w_r (f_r - f_i) + f_i E00, with E00 the
///   exact zeroth eigenvalue, so constants are reproduced exactly and quadrature
///   only sees the mollified difference f_r - f_i.
///   Epsilon: K replaced by the continuous truncation K^eps, equal to
///   eps^{-lambda/2} (resp. eps^{-lambda}) where the kernel distance is <= eps.
struct Regularization {
    enum class Mode { Subtract, Epsilon };
    Mode mode = Mode::Subtract;
    double eps = 0.0;

    static Regularization subtract() { return {Mode::Subtract, 0.0}; }
    static Regularization epsilon(double e);
};

/// Discrete integral operator on the nodes of a quadrature rule. Applies
/// matrix-free or through an assembled dense matrix, with identical results;
/// rows are processed independently so parallel execution is deterministic.
class KernelOperator {
  public:
    KernelOperator(const KernelSpec& spec, RulePtr rule,
                   Regularization reg = Regularization::subtract(),
                   KernelKind kind = KernelKind::Distance);

    const KernelSpec& spec() const { return spec_; }
    const RulePtr& rule() const { return rule_; }
    int size() const { return n_; }

    /// Exact zeroth eigenvalue used by the subtraction.
    double zeroth_eigenvalue() const { return e00_; }

    RealVector apply(const RealVector& f) const;
    RealMatrix apply(const RealMatrix& fields) const;

    /// <Af, g> under the discrete measure.
    double quad_form(const RealVector& f, const RealVector& g) const;

    /// Assembled dense matrix A with A[i][r] ~ K(xi_i, xi_r) w_r and the
    /// diagonal per the regularization. Cached after first call.
    const RealMatrix& dense() const;

    /// max_i sum_r |A_ir|, the discrete row-integral bound sup int |K| d(sigma);
    /// bounds the operator norm on every L^p.
    double schur_bound() const;

    /// Raw kernel value between two nodes (off-diagonal; regularized form).
    double kernel_entry(int i, int r) const;

  private:
    void row_pass(int i, const double* fields, int n_fields, int stride, double* acc,
                  double* row_sum) const;

    KernelSpec spec_;
    RulePtr rule_;
    Regularization reg_;
    KernelKind kind_;
    int n_ = 0;
    double e00_ = 0.0;
    RealMatrix coords_;  // re/im pairs per complex coordinate, one row per node
    mutable std::optional<RealMatrix> dense_;
};

/// Dense operator matrix (spec'd assembly entry point).
RealMatrix kernel_matrix(const KernelSpec& spec, RulePtr rule,
                         Regularization reg = Regularization::subtract(),
                         KernelKind kind = KernelKind::Distance);

double schur_bound(const KernelSpec& spec, RulePtr rule,
                   Regularization reg = Regularization::subtract());

}  // namespace crsphere
