#pragma once

#include "crsphere/types.hpp"

#include <cmath>
#include <random>

namespace crsphere::testutil {

inline double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

/// Uniform point on S^{2m+1} (complex Gaussian, normalized).
inline ComplexVector random_sphere_point(std::mt19937_64& gen, int m) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(m + 1);
    for (int i = 0; i <= m; ++i) v(i) = Complex(gauss(gen), gauss(gen));
    return v / v.norm();
}

}  // namespace crsphere::testutil
