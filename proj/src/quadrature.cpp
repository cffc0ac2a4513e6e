#include "crsphere/quadrature.hpp"

#include "crsphere/specfun.hpp"

#include <cmath>
#include <cstdio>

namespace crsphere {

void gauss_legendre(int n, RealVector& nodes, RealVector& weights) {
    if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
    nodes.resize(n);
    weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes(i) = -x;
        nodes(n - 1 - i) = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights(i) = w;
        weights(n - 1 - i) = w;
    }
}

double total_measure(SphereFamily family, int dim) {
    if (family == SphereFamily::CRSphere)
        return 2.0 * std::pow(M_PI, dim + 1) / std::exp(log_gamma(dim + 1.0));
    if (dim == 1) return 2.0 * M_PI;
    if (dim == 2) return 4.0 * M_PI;
    throw std::domain_error("total_measure: real sphere supported for n = 1, 2 only");
}

namespace {

void check_weight_sum(QuadratureRule& rule) {
    const double target = total_measure(rule.family, rule.dim);
    const double sum = pairwise_sum(rule.weights);
    if (std::fabs(sum - target) > 1e-12 * target)
        throw std::runtime_error("quadrature rule: weight sum " + std::to_string(sum) +
                                 " does not match measure " + std::to_string(target));
    if (rule.weights.minCoeff() <= 0.0)
        throw std::runtime_error("quadrature rule: non-positive weight");
}

}  // namespace

RulePtr hopf_rule(int n_s, int n_a) {
    if (n_s < 2 || n_a < 4) throw std::domain_error("hopf_rule: need n_s >= 2, n_a >= 4");
    RealVector s, ws;
    gauss_legendre(n_s, s, ws);

    auto rule = std::make_shared<QuadratureRule>();
    rule->family = SphereFamily::CRSphere;
    rule->dim = 1;
    rule->descriptor = "hopf(" + std::to_string(n_s) + "," + std::to_string(n_a) + ")";
    const int n = n_s * n_a * n_a;
    rule->points.resize(n, 2);
    rule->weights.resize(n);

    const double dphi = 2.0 * M_PI / n_a;
    int idx = 0;
    for (int i = 0; i < n_s; ++i) {
        const double c = std::sqrt(0.5 * (1.0 + s(i)));  // cos(theta)
        const double q = std::sqrt(0.5 * (1.0 - s(i)));  // sin(theta)
        const double w = 0.25 * ws(i) * dphi * dphi;
        for (int a = 0; a < n_a; ++a) {
            const double phi1 = a * dphi;
            const Complex e1 = std::polar(c, phi1);
            for (int b = 0; b < n_a; ++b) {
                const double phi2 = b * dphi;
                rule->points(idx, 0) = e1;
                rule->points(idx, 1) = std::polar(q, phi2);
                rule->weights(idx) = w;
                ++idx;
            }
        }
    }
    check_weight_sum(*rule);
    return rule;
}

RulePtr real_sphere_rule(int n, int n_polar, int n_azimuth) {
    auto rule = std::make_shared<QuadratureRule>();
    rule->family = SphereFamily::RealSphere;
    rule->dim = n;
    if (n == 1) {
        if (n_polar < 4) throw std::domain_error("real_sphere_rule: need >= 4 nodes on S^1");
        rule->descriptor = "circle(" + std::to_string(n_polar) + ")";
        rule->points.resize(n_polar, 2);
        rule->weights.setConstant(n_polar, 2.0 * M_PI / n_polar);
        for (int i = 0; i < n_polar; ++i) {
            const double th = 2.0 * M_PI * i / n_polar;
            rule->points(i, 0) = std::cos(th);
            rule->points(i, 1) = std::sin(th);
        }
    } else if (n == 2) {
        if (n_polar < 2 || n_azimuth < 4)
            throw std::domain_error("real_sphere_rule: S^2 grid under-resolved");
        rule->descriptor =
            "sphere2(" + std::to_string(n_polar) + "," + std::to_string(n_azimuth) + ")";
        RealVector u, wu;
        gauss_legendre(n_polar, u, wu);
        rule->points.resize(n_polar * n_azimuth, 3);
        rule->weights.resize(n_polar * n_azimuth);
        const double dphi = 2.0 * M_PI / n_azimuth;
        int idx = 0;
        for (int i = 0; i < n_polar; ++i) {
            const double r = std::sqrt(std::max(0.0, 1.0 - u(i) * u(i)));
            for (int a = 0; a < n_azimuth; ++a) {
                const double phi = a * dphi;
                rule->points(idx, 0) = r * std::cos(phi);
                rule->points(idx, 1) = r * std::sin(phi);
                rule->points(idx, 2) = u(i);
                rule->weights(idx) = wu(i) * dphi;
                ++idx;
            }
        }
    } else {
        throw std::domain_error("real_sphere_rule: only n = 1, 2 supported");
    }
    check_weight_sum(*rule);
    return rule;
}

DensityField make_field(RulePtr rule, const std::function<double(const ComplexVector&)>& f) {
    DensityField out;
    out.rule = rule;
    out.evaluator = f;
    out.values.resize(rule->size());
    for (int i = 0; i < rule->size(); ++i) out.values(i) = f(rule->point(i));
    return out;
}

DensityField constant_field(RulePtr rule, double c) {
    DensityField out;
    out.rule = std::move(rule);
    out.values.setConstant(out.rule->size(), c);
    out.evaluator = [c](const ComplexVector&) { return c; };
    return out;
}

double integrate(const QuadratureRule& rule, const RealVector& values) {
    if (values.size() != rule.weights.size())
        throw std::invalid_argument("integrate: field/rule size mismatch");
    return pairwise_sum(RealVector(rule.weights.cwiseProduct(values)));
}

double weighted_inner(const QuadratureRule& rule, const RealVector& f, const RealVector& g) {
    return integrate(rule, RealVector(f.cwiseProduct(g)));
}

double lp_norm(const QuadratureRule& rule, const RealVector& values, double p) {
    if (!(p >= 1.0)) throw std::domain_error("lp_norm: need p >= 1");
    const RealVector abs_p = values.array().abs().pow(p).matrix();
    return std::pow(integrate(rule, abs_p), 1.0 / p);
}

double lp_norm(const DensityField& f, double p) { return lp_norm(*f.rule, f.values, p); }

namespace {

void write_row(std::ostream& os, const QuadratureRule& rule, int i, const double* value) {
    char buf[64];
    for (int c = 0; c < rule.points.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,", rule.points(i, c).real(),
                      rule.points(i, c).imag());
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", rule.weights(i));
    os << buf;
    if (value) {
        std::snprintf(buf, sizeof(buf), ",%.17g", *value);
        os << buf;
    }
    os << "\n";
}

void write_header(std::ostream& os, const QuadratureRule& rule, bool with_value) {
    for (int c = 0; c < rule.points.cols(); ++c) os << "re" << c << ",im" << c << ",";
    os << "weight";
    if (with_value) os << ",value";
    os << "\n";
}

}  // namespace

void write_rule_csv(std::ostream& os, const QuadratureRule& rule) {
    write_header(os, rule, false);
    for (int i = 0; i < rule.size(); ++i) write_row(os, rule, i, nullptr);
}

void write_field_csv(std::ostream& os, const DensityField& f) {
    write_header(os, *f.rule, true);
    for (int i = 0; i < f.rule->size(); ++i) {
        const double v = f.values(i);
        write_row(os, *f.rule, i, &v);
    }
}

}  // namespace crsphere
