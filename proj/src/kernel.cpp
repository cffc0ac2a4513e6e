#include "crsphere/kernel.hpp"

#include "crsphere/spectra.hpp"

#include <cmath>

namespace crsphere {

Regularization Regularization::epsilon(double e) {
    if (!(e > 0.0)) throw std::domain_error("Regularization: eps must be positive");
    return {Mode::Epsilon, e};
}

namespace {

constexpr int kDenseLimit = 6500;        // auto-assemble below this node count
constexpr int kRealOracleRefinement = 8;  // zeroth eigenvalue of the real-sphere kernel

// Kernel value as a function of the squared distance surrogate:
//   CR:   base = |1 - xi.conj(eta)|^2, value = base^{-lambda/4}
//   real: base = |xi - eta|^2,         value = base^{-lambda/2}
enum class PowMode { InvSqrt, Inv, General };

inline double pow_base(PowMode mode, double base, double expo) {
    switch (mode) {
        case PowMode::InvSqrt: return 1.0 / std::sqrt(base);
        case PowMode::Inv: return 1.0 / base;
        default: return std::pow(base, expo);
    }
}

}  // namespace

KernelOperator::KernelOperator(const KernelSpec& spec, RulePtr rule, Regularization reg,
                               KernelKind kind)
    : spec_(spec), rule_(std::move(rule)), reg_(reg), kind_(kind) {
    validate(spec_);
    if (rule_->family != spec_.family || rule_->dim != spec_.dim)
        throw std::invalid_argument("KernelOperator: rule and kernel live on different spheres");
    if (kind_ == KernelKind::ReDistance && spec_.family != SphereFamily::CRSphere)
        throw std::invalid_argument("KernelOperator: Re-kernel defined on the CR sphere only");
    if (kind_ == KernelKind::ReDistance && reg_.mode == Regularization::Mode::Epsilon)
        throw std::invalid_argument("KernelOperator: epsilon truncation applies to the distance "
                                    "kernel only");
    n_ = rule_->size();

    const double alpha = spec_.lambda / 4.0;
    if (spec_.family == SphereFamily::CRSphere) {
        e00_ = (kind_ == KernelKind::Distance) ? eig_dist_kernel(alpha, spec_.dim, {0, 0})
                                               : re_kernel_eig(alpha, spec_.dim, {0, 0});
    } else {
        e00_ = real_sphere_eig(spec_.dim, spec_.lambda, 0, kRealOracleRefinement);
    }

    const int nc = static_cast<int>(rule_->points.cols());
    coords_.resize(n_, 2 * nc);
    for (int c = 0; c < nc; ++c) {
        coords_.col(2 * c) = rule_->points.col(c).real();
        coords_.col(2 * c + 1) = rule_->points.col(c).imag();
    }
}

double KernelOperator::kernel_entry(int i, int r) const {
    const ComplexVector xi = rule_->point(i);
    const ComplexVector et = rule_->point(r);
    const Complex w = herm(xi, et);
    double base, expo;
    if (spec_.family == SphereFamily::CRSphere) {
        base = std::norm(1.0 - w);
        expo = -spec_.lambda / 4.0;
    } else {
        base = std::max(0.0, 2.0 - 2.0 * std::real(w));
        expo = -spec_.lambda / 2.0;
    }
    double val;
    if (reg_.mode == Regularization::Mode::Epsilon && base <= reg_.eps * reg_.eps)
        val = std::pow(reg_.eps * reg_.eps, expo);
    else
        val = std::pow(base, expo);
    if (kind_ == KernelKind::ReDistance) val *= std::real(w);
    return val;
}

// Accumulates, for row i, acc[c] = sum_{r != i} K_ir w_r f_c(r) and
// row_sum = sum_{r != i} K_ir w_r. Sequential in r for determinism.
void KernelOperator::row_pass(int i, const double* fields, int n_fields, int stride, double* acc,
                              double* row_sum) const {
    const bool cr = spec_.family == SphereFamily::CRSphere;
    const double expo = cr ? -spec_.lambda / 4.0 : -spec_.lambda / 2.0;
    PowMode mode = PowMode::General;
    if (expo == -0.5) mode = PowMode::InvSqrt;
    else if (expo == -1.0) mode = PowMode::Inv;
    const bool eps_mode = reg_.mode == Regularization::Mode::Epsilon;
    const double eps2 = reg_.eps * reg_.eps;
    const double eps_val = eps_mode ? std::pow(eps2, expo) : 0.0;
    const bool re_kind = kind_ == KernelKind::ReDistance;

    const int nc2 = static_cast<int>(coords_.cols());
    const double* w = rule_->weights.data();

    for (int c = 0; c < n_fields; ++c) acc[c] = 0.0;
    double rs = 0.0;

    if (nc2 == 4 && cr) {  // S^3 fast path
        const double* x0 = coords_.col(0).data();
        const double* y0 = coords_.col(1).data();
        const double* x1 = coords_.col(2).data();
        const double* y1 = coords_.col(3).data();
        const double a0 = x0[i], b0 = y0[i], a1 = x1[i], b1 = y1[i];
        auto run = [&](int lo, int hi) {
            for (int r = lo; r < hi; ++r) {
                const double wr = a0 * x0[r] + b0 * y0[r] + a1 * x1[r] + b1 * y1[r];
                const double wi = b0 * x0[r] - a0 * y0[r] + b1 * x1[r] - a1 * y1[r];
                const double u = 1.0 - wr;
                double base = u * u + wi * wi;
                double k;
                if (eps_mode && base <= eps2) k = eps_val;
                else k = pow_base(mode, base, expo);
                if (re_kind) k *= wr;
                const double g = k * w[r];
                rs += g;
                for (int c = 0; c < n_fields; ++c) acc[c] += g * fields[c * stride + r];
            }
        };
        run(0, i);
        run(i + 1, n_);
    } else {
        auto run = [&](int lo, int hi) {
            for (int r = lo; r < hi; ++r) {
                double wr = 0.0, wi = 0.0;
                for (int c = 0; c < nc2; c += 2) {
                    const double xa = coords_(i, c), ya = coords_(i, c + 1);
                    const double xb = coords_(r, c), yb = coords_(r, c + 1);
                    wr += xa * xb + ya * yb;
                    wi += ya * xb - xa * yb;
                }
                double base;
                if (cr) {
                    const double u = 1.0 - wr;
                    base = u * u + wi * wi;
                } else {
                    base = std::max(0.0, 2.0 - 2.0 * wr);
                }
                double k;
                if (eps_mode && base <= eps2) k = eps_val;
                else k = pow_base(mode, base, expo);
                if (re_kind) k *= wr;
                const double g = k * w[r];
                rs += g;
                for (int c = 0; c < n_fields; ++c) acc[c] += g * fields[c * stride + r];
            }
        };
        run(0, i);
        run(i + 1, n_);
    }
    *row_sum = rs;
}

RealMatrix KernelOperator::apply(const RealMatrix& fields) const {
    if (fields.rows() != n_) throw std::invalid_argument("KernelOperator::apply: size mismatch");
    if (dense_) return *dense_ * fields;
    if (n_ <= kDenseLimit) {
        dense();
        return *dense_ * fields;
    }

    const int nf = static_cast<int>(fields.cols());
    RealMatrix out(n_, nf);
    const bool subtract = reg_.mode == Regularization::Mode::Subtract;
    const double diag_eps = subtract ? 0.0 : kernel_entry(0, 0);  // eps-mode self value

#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_; ++i) {
        double acc[16];
        double row_sum = 0.0;
        const int chunk = std::min(nf, 16);
        // fields processed in blocks of up to 16 columns
        for (int c0 = 0; c0 < nf; c0 += chunk) {
            const int nb = std::min(chunk, nf - c0);
            row_pass(i, fields.col(c0).data(), nb, static_cast<int>(fields.rows()), acc,
                     &row_sum);
            for (int c = 0; c < nb; ++c) {
                if (subtract)
                    out(i, c0 + c) = acc[c] + (e00_ - row_sum) * fields(i, c0 + c);
                else
                    out(i, c0 + c) = acc[c] + diag_eps * rule_->weights(i) * fields(i, c0 + c);
            }
        }
    }
    return out;
}

RealVector KernelOperator::apply(const RealVector& f) const {
    return apply(RealMatrix(f)).col(0);
}

double KernelOperator::quad_form(const RealVector& f, const RealVector& g) const {
    return weighted_inner(*rule_, apply(f), g);
}

const RealMatrix& KernelOperator::dense() const {
    if (dense_) return *dense_;
    if (static_cast<long long>(n_) * n_ * 8 > 3LL * 1024 * 1024 * 1024)
        throw std::runtime_error("KernelOperator::dense: matrix would exceed 3 GiB; use apply()");
    RealMatrix a(n_, n_);
    const bool subtract = reg_.mode == Regularization::Mode::Subtract;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_; ++i) {
        double row_sum = 0.0;
        for (int r = 0; r < n_; ++r) {
            if (r == i) continue;
            const double v = kernel_entry(i, r) * rule_->weights(r);
            a(i, r) = v;
            row_sum += v;
        }
        if (subtract)
            a(i, i) = e00_ - row_sum;
        else
            a(i, i) = kernel_entry(i, i) * rule_->weights(i);
    }
    dense_ = std::move(a);
    return *dense_;
}

double KernelOperator::schur_bound() const {
    double bound = 0.0;
#pragma omp parallel for schedule(static) reduction(max : bound)
    for (int i = 0; i < n_; ++i) {
        double s_abs = 0.0, s_plain = 0.0;
        for (int r = 0; r < n_; ++r) {
            if (r == i) continue;
            const double v = kernel_entry(i, r) * rule_->weights(r);
            s_abs += std::fabs(v);
            s_plain += v;
        }
        if (reg_.mode == Regularization::Mode::Subtract)
            s_abs += std::fabs(e00_ - s_plain);  // mass assigned to the diagonal cell
        else
            s_abs += std::fabs(kernel_entry(i, i)) * rule_->weights(i);
        bound = std::max(bound, s_abs);
    }
    return bound;
}

RealMatrix kernel_matrix(const KernelSpec& spec, RulePtr rule, Regularization reg,
                         KernelKind kind) {
    return KernelOperator(spec, std::move(rule), reg, kind).dense();
}

double schur_bound(const KernelSpec& spec, RulePtr rule, Regularization reg) {
    return KernelOperator(spec, std::move(rule), reg).schur_bound();
}

}  // namespace crsphere
