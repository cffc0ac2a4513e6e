#include "crsphere/mobius.hpp"

#include <cmath>

namespace crsphere {

ComplexVector phi_map(const MobiusParams& p, const ComplexVector& xi) {
    const Complex w = herm(xi, p.eta);
    const double ch = std::cosh(p.t), sh = std::sinh(p.t);
    const Complex den = ch + sh * w;  // |den| >= cosh t - sinh t > 0
    return (xi - w * p.eta) / den + ((sh + ch * w) / den) * p.eta;
}

double conformal_factor(const MobiusParams& p, const ComplexVector& xi) {
    const Complex w = herm(xi, p.eta);
    const double ch = std::cosh(p.t), sh = std::sinh(p.t);
    return 1.0 / std::norm(ch + sh * w);
}

double fundamental_identity_residual(const MobiusParams& p, const ComplexVector& xi,
                                     const ComplexVector& zeta) {
    const ComplexVector fx = phi_map(p, xi);
    const ComplexVector fz = phi_map(p, zeta);
    const double lhs = std::norm(1.0 - herm(fx, fz));
    const double rhs =
        std::norm(1.0 - herm(xi, zeta)) * conformal_factor(p, xi) * conformal_factor(p, zeta);
    return std::fabs(lhs - rhs);
}

double psi_eta(const ComplexVector& eta, const ComplexVector& xi) {
    return std::real(herm(xi, eta));
}

double t_psi_eta(const ComplexVector& eta, const ComplexVector& xi) {
    return -std::imag(herm(xi, eta));
}

DensityField pushforward(const MobiusParams& p, const DensityField& f, double power) {
    if (!f.evaluator)
        throw std::invalid_argument("pushforward: field carries no off-node evaluator");
    DensityField out;
    out.rule = f.rule;
    out.values.resize(f.rule->size());
    for (int i = 0; i < f.rule->size(); ++i) {
        const ComplexVector xi = f.rule->point(i);
        out.values(i) = f.evaluator(phi_map(p, xi)) * std::pow(conformal_factor(p, xi), power);
    }
    const auto base = f.evaluator;
    out.evaluator = [p, power, base](const ComplexVector& xi) {
        return base(phi_map(p, xi)) * std::pow(conformal_factor(p, xi), power);
    };
    return out;
}

double kazdan_warner_residual(const ComplexVector& eta, const ComplexVector& a,
                              const DensityField& f, double h) {
    const QuadratureRule& rule = *f.rule;
    if (rule.family != SphereFamily::CRSphere)
        throw std::invalid_argument("kazdan_warner_residual: CR-sphere rule required");
    if (f.values.minCoeff() <= 0.0)
        throw std::domain_error("kazdan_warner_residual: field must be strictly positive");

    const int m = rule.dim;
    const double q = 2.0 * (m + 1.0) / m;
    const RealVector fq = f.values.array().pow(q).matrix();

    auto weight_integral = [&](double t) {
        const MobiusParams p{t, eta};
        RealVector vals(rule.size());
        for (int i = 0; i < rule.size(); ++i) vals(i) = psi_eta(a, phi_map(p, rule.point(i)));
        return integrate(rule, RealVector(vals.cwiseProduct(fq)));
    };
    const double lhs = (weight_integral(h) - weight_integral(-h)) / (2.0 * h);

    const double a_dot_eta = std::real(herm(a, eta));
    RealVector integrand(rule.size());
    for (int i = 0; i < rule.size(); ++i) {
        const ComplexVector xi = rule.point(i);
        const double grad_pair = a_dot_eta - psi_eta(a, xi) * psi_eta(eta, xi);
        const double reeb_pair = t_psi_eta(a, xi) * t_psi_eta(eta, xi);
        integrand(i) = grad_pair + reeb_pair;
    }
    const double rhs = integrate(rule, RealVector(integrand.cwiseProduct(fq)));

    return std::fabs(lhs - rhs);
}

}  // namespace crsphere
