#include "crsphere/heisenberg.hpp"

#include <cmath>

namespace crsphere {

HeisenbergPoint group_mul(const HeisenbergPoint& u, const HeisenbergPoint& v) {
    if (u.z.size() != v.z.size())
        throw std::invalid_argument("group_mul: points live on different H^m");
    return {u.z + v.z, u.t + v.t + 2.0 * std::imag(herm(u.z, v.z))};
}

HeisenbergPoint group_inverse(const HeisenbergPoint& u) { return {-u.z, -u.t}; }

HeisenbergPoint dilate(double delta, const HeisenbergPoint& u) {
    if (!(delta > 0.0)) throw std::domain_error("dilate: delta must be positive");
    return {delta * u.z, delta * delta * u.t};
}

double homogeneous_norm(const HeisenbergPoint& u) {
    const double z2 = u.z.squaredNorm();
    return std::pow(z2 * z2 + u.t * u.t, 0.25);
}

double extremal_profile(const HeisenbergPoint& u, double lambda) {
    const double Q = 2.0 * u.m() + 2.0;
    if (!(lambda > 0.0) || !(lambda < Q))
        throw std::domain_error("extremal_profile: lambda must lie in (0, Q)");
    const double a = 1.0 + u.z.squaredNorm();
    return std::pow(a * a + u.t * u.t, -(2.0 * Q - lambda) / 4.0);
}

ComplexVector cayley(const HeisenbergPoint& u) {
    const int m = u.m();
    const Complex den(1.0 + u.z.squaredNorm(), -u.t);  // never vanishes
    ComplexVector zeta(m + 1);
    zeta.head(m) = 2.0 * u.z / den;
    zeta(m) = Complex(1.0 - u.z.squaredNorm(), u.t) / den;
    return zeta;
}

HeisenbergPoint cayley_inverse(const ComplexVector& zeta) {
    const int m = static_cast<int>(zeta.size()) - 1;
    const Complex last = zeta(m);
    if (std::abs(last + 1.0) < 1e-14)
        throw std::domain_error("cayley_inverse: the pole (0,...,0,-1) has no preimage");
    // With s = |z|^2 - i t: zeta_{m+1} = (1 - s)/(1 + s), z_j = zeta_j (1 + s)/2.
    const Complex s = (1.0 - last) / (1.0 + last);
    HeisenbergPoint u;
    u.z = zeta.head(m) * (1.0 + s) / 2.0;
    u.t = -std::imag(s);
    return u;
}

}  // namespace crsphere
