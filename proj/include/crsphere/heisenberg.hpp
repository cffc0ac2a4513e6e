#pragma once

#include "crsphere/types.hpp"

namespace crsphere {

/// Group element (z, t) of H^m, z in C^m.
struct HeisenbergPoint {
    ComplexVector z;
    double t = 0.0;

    int m() const { return static_cast<int>(z.size()); }
};

/// (z,t).(z',t') = (z + z', t + t' + 2 Im z.conj(z')).
HeisenbergPoint group_mul(const HeisenbergPoint& u, const HeisenbergPoint& v);

/// Two-sided inverse (-z, -t).
HeisenbergPoint group_inverse(const HeisenbergPoint& u);

/// Parabolic dilation (delta z, delta^2 t), delta > 0.
HeisenbergPoint dilate(double delta, const HeisenbergPoint& u);

/// |(z,t)| = (|z|^4 + t^2)^{1/4}.
double homogeneous_norm(const HeisenbergPoint& u);

/// H(z,t) = ((1 + |z|^2)^2 + t^2)^{-(2Q-lambda)/4}, Q = 2m+2, 0 < lambda < Q.
double extremal_profile(const HeisenbergPoint& u, double lambda);

/// Cayley map H^m -> S^{2m+1} \ {south pole}:
///   zeta_j = 2 z_j / (1 + |z|^2 - i t),  zeta_{m+1} = (1 - |z|^2 + i t) / (1 + |z|^2 - i t).
/// The sign of t is fixed by the distance identity
///   |1 - cayley(u).conj(cayley(v))| = 2 |v^{-1}u|^2 omega(u)^{-1/2} omega(v)^{-1/2},
/// omega(z,t) = (1+|z|^2)^2 + t^2, under which the extremal profile pulls back
/// the spherical extremal pair.
ComplexVector cayley(const HeisenbergPoint& u);

/// Inverse of the Cayley map; zeta must be a unit vector with zeta_{m+1} != -1.
HeisenbergPoint cayley_inverse(const ComplexVector& zeta);

}  // namespace crsphere
