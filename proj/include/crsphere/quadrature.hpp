#pragma once

#include "crsphere/types.hpp"

#include <functional>
#include <memory>
#include <ostream>

namespace crsphere {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, RealVector& nodes, RealVector& weights);

/// Discrete surrogate for the surface measure d(sigma). Points are rows of a
/// complex matrix of width dim+1 (imaginary parts zero for real spheres);
/// weights are positive and sum to the total measure.
struct QuadratureRule {
    SphereFamily family = SphereFamily::CRSphere;
    int dim = 1;
    ComplexMatrix points;
    RealVector weights;
    std::string descriptor;

    int size() const { return static_cast<int>(weights.size()); }
    ComplexVector point(int i) const { return points.row(i).transpose(); }
};

using RulePtr = std::shared_ptr<const QuadratureRule>;

/// Total measure: 2 pi^{m+1}/m! for S^{2m+1}, 2pi for S^1, 4pi for S^2.
double total_measure(SphereFamily family, int dim);

/// S^3 rule in Hopf coordinates xi = (cos(theta) e^{i phi1}, sin(theta) e^{i phi2}):
/// with s = cos(2 theta), d(sigma) = (1/4) ds dphi1 dphi2, so Gauss-Legendre in s
/// tensored with uniform grids in both angles. Spectrally accurate for smooth
/// integrands; n_s * n_a^2 nodes.
RulePtr hopf_rule(int n_s, int n_a);

/// S^1 (uniform, n_polar nodes; n_azimuth ignored) or S^2 (Gauss-Legendre in the
/// polar cosine tensor a uniform azimuthal grid).
RulePtr real_sphere_rule(int n, int n_polar, int n_azimuth);

/// Function values on the nodes of a rule. The optional evaluator supplies
/// off-node values for operations that compose with sphere maps; fields
/// without one are rejected there rather than interpolated.
struct DensityField {
    RealVector values;
    RulePtr rule;
    std::function<double(const ComplexVector&)> evaluator;
};

DensityField make_field(RulePtr rule, const std::function<double(const ComplexVector&)>& f);
DensityField constant_field(RulePtr rule, double c);

/// sum_i w_i v_i by fixed-order pairwise summation.
double integrate(const QuadratureRule& rule, const RealVector& values);

/// <f, g> = sum_i w_i f_i g_i.
double weighted_inner(const QuadratureRule& rule, const RealVector& f, const RealVector& g);

/// (sum_i w_i |f_i|^p)^{1/p}, p >= 1.
double lp_norm(const DensityField& f, double p);
double lp_norm(const QuadratureRule& rule, const RealVector& values, double p);

/// One node per line: point coordinates (re, im interleaved), weight[, value].
void write_rule_csv(std::ostream& os, const QuadratureRule& rule);
void write_field_csv(std::ostream& os, const DensityField& f);

}  // namespace crsphere
