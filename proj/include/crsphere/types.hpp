#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace crsphere {

using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Bigraded spherical-harmonic index: degree j in z, degree k in conj(z).
struct SpectralIndex {
    int j = 0;
    int k = 0;
};

inline bool operator==(SpectralIndex a, SpectralIndex b) { return a.j == b.j && a.k == b.k; }

enum class SphereFamily { CRSphere, RealSphere };

/// Kernel family and parameters. On the CR sphere S^{2m+1} the kernel is
/// |1 - xi.conj(eta)|^{-lambda/2} with dim = m; on the real sphere S^n it is
/// |xi - eta|^{-lambda} with dim = n.
struct KernelSpec {
    SphereFamily family = SphereFamily::CRSphere;
    int dim = 1;
    double lambda = 2.0;
};

/// Upper endpoint of the admissible lambda range: Q = 2m+2 (CR) or n (real).
inline double lambda_limit(const KernelSpec& spec) {
    return spec.family == SphereFamily::CRSphere ? 2.0 * spec.dim + 2.0
                                                 : static_cast<double>(spec.dim);
}

/// Critical exponent 2Q/(2Q - lambda) resp. 2n/(2n - lambda).
inline double critical_exponent(const KernelSpec& spec) {
    const double L = 2.0 * lambda_limit(spec);
    return L / (L - spec.lambda);
}

inline void validate(const KernelSpec& spec) {
    if (spec.dim < 1)
        throw std::domain_error("KernelSpec: dimension parameter must be positive");
    if (!(spec.lambda > 0.0) || !(spec.lambda < lambda_limit(spec)))
        throw std::domain_error("KernelSpec: lambda must lie in (0, " +
                                std::to_string(lambda_limit(spec)) + ")");
}

/// Hermitian pairing sum_a u_a conj(v_a); the "xi . conj(eta)" of kernel arguments.
inline Complex herm(const ComplexVector& u, const ComplexVector& v) {
    return v.dot(u);  // Eigen's dot conjugates its first argument
}

/// Fixed-order pairwise summation. Deterministic for a given input order and
/// better conditioned than a running sum; used for all reported reductions.
double pairwise_sum(const double* data, Eigen::Index n);

inline double pairwise_sum(const RealVector& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace crsphere
