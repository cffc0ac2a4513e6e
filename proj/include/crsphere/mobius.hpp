#pragma once

#include "crsphere/quadrature.hpp"
#include "crsphere/types.hpp"

namespace crsphere {

/// One-parameter family of CR automorphisms of S^{2m+1}: flow time t >= 0
/// towards the unit direction eta.
struct MobiusParams {
    double t = 0.0;
    ComplexVector eta;
};

/// Phi_{t,eta}(xi) = (xi - (xi.conj(eta)) eta) / (cosh t + sinh t xi.conj(eta))
///                 + ((sinh t + cosh t xi.conj(eta)) / (cosh t + sinh t xi.conj(eta))) eta.
/// Unit-sphere preserving; Phi_{0,eta} = id; Phi_{s,eta} o Phi_{t,eta} = Phi_{s+t,eta}.
ComplexVector phi_map(const MobiusParams& p, const ComplexVector& xi);

/// Conformal factor phi_{t,eta}(xi) = |cosh t + (xi.conj(eta)) sinh t|^{-2},
/// with range [e^{-2t}, e^{2t}].
double conformal_factor(const MobiusParams& p, const ComplexVector& xi);

/// | |1 - Phi(xi).conj(Phi(zeta))|^2 - |1 - xi.conj(zeta)|^2 phi(xi) phi(zeta) |.
double fundamental_identity_residual(const MobiusParams& p, const ComplexVector& xi,
                                     const ComplexVector& zeta);

/// psi_eta(xi) = Re(xi.conj(eta)), the linear height function along eta.
double psi_eta(const ComplexVector& eta, const ComplexVector& xi);

/// Derivative of psi_eta along the Reeb flow xi -> e^{is} xi: -Im(xi.conj(eta)).
double t_psi_eta(const ComplexVector& eta, const ComplexVector& xi);

/// f_{t,eta}(xi) = f(Phi_{t,eta}(xi)) * phi_{t,eta}(xi)^power on the nodes of
/// f's rule. Requires an off-node evaluator on f.
DensityField pushforward(const MobiusParams& p, const DensityField& f, double power);

/// Residual of the flow-derivative identity with test weight K = psi_a:
///   d/dt|_{t=0} int K o Phi_{t,eta} f^q d(sigma)
///     = int [ <grad K, grad psi_eta>_0 + TK T(psi_eta) ] f^q d(sigma),
/// q = 2(m+1)/m. The left side uses central differences with step h, the right
/// side the closed forms <grad psi_a, grad psi_eta>_0 = <a,eta>_R - psi_a psi_eta
/// and T(psi_a) = -Im(xi.conj(a)). Returns |LHS - RHS|.
double kazdan_warner_residual(const ComplexVector& eta, const ComplexVector& a,
                              const DensityField& f, double h = 1e-3);

}  // namespace crsphere
