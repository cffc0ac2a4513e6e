#pragma once

#include "crsphere/types.hpp"

#include <functional>

namespace crsphere {

/// Eigenvalue of the kernel |1 - xi.conj(eta)|^{-2 alpha} on the bigraded
/// harmonic space H_{j,k} of S^{2m+1}, -1 < alpha < (m+1)/2, alpha != 0:
///   E_{j,k} = 2 pi^{m+1} Gamma(m+1-2a)/Gamma(a)^2
///           * Gamma(j+a)/Gamma(j+m+1-a) * Gamma(k+a)/Gamma(k+m+1-a).
double eig_dist_kernel(double alpha, int m, SpectralIndex idx);

/// Eigenvalue of |xi.conj(eta)|^2 |1 - xi.conj(eta)|^{-2 alpha} on H_{j,k}:
/// E_{j,k} times
///   1 - (a-1)(m+1-2a)(2jk + n(j+k-1+a)) / ((j-1+a)(j+m+1-a)(k-1+a)(k+m+1-a)),
/// where the symbol n defaults to m (certified against the quadrature oracle).
/// At alpha = 1 the correction vanishes identically.
double eig_dist_kernel_weighted(double alpha, int m, SpectralIndex idx, double n_symbol);
double eig_dist_kernel_weighted(double alpha, int m, SpectralIndex idx);

/// Eigenvalue F_{j,k} of Re(xi.conj(eta)) |1 - xi.conj(eta)|^{-2 alpha}, from
/// Re w = (1 + |w|^2 - |1-w|^2)/2:
///   F_{j,k} = (E_{j,k}(a) + E^w_{j,k}(a) - E_{j,k}(a-1)) / 2,  alpha > 0.
/// At (0,0) with alpha = lambda/4 it satisfies F = lambda/(4(m+1)-lambda) * E.
double re_kernel_eig(double alpha, int m, SpectralIndex idx);

/// Largest constant C such that, mode by mode for 1 <= j+k <= cutoff,
///   F_{j,k} >= lambda/(4(m+1)-lambda) E_{j,k} + C (2(m+1)-lambda)/(4(m+1)-lambda) E_{j,k},
/// with alpha = lambda/4. Positive throughout 0 < lambda < Q.
double r2v_best_c(const KernelSpec& spec, int cutoff);

/// Eigenvalue (j + m/2)(k + m/2) of the conformal sublaplacian -Lap_b + m^2/4
/// on H_{j,k}; inverse-proportional to E_{j,k} at alpha = m/2 and pinned by
/// the value m^2/4 on constants.
double sublaplacian_eig(int m, SpectralIndex idx);

/// Sharp constant of the L^p -> L^{p'} bound at the critical exponent:
///   CR sphere:  (2 pi^{m+1}/m!)^{lambda/Q} m! Gamma((Q-lambda)/2) / Gamma((2Q-lambda)/4)^2
///   real sphere: pi^{lambda/2} Gamma((n-lambda)/2)/Gamma(n-lambda/2) (Gamma(n)/Gamma(n/2))^{1-lambda/n}
double sharp_constant(const KernelSpec& spec);

/// True iff E_{j,k} > 0 for all j+k <= cutoff at alpha = lambda/4.
bool positivity_scan(const KernelSpec& spec, int cutoff);

/// Independent Funk-Hecke oracle: reduces the S^{2m+1} integral to the unit disc,
///   eig = c_m int_D K(w) conj(R_{j,k}(w)) (1-|w|^2)^{m-1} dA(w),  c_m = 2 pi^m/(m-1)!,
/// on a polar mesh centred at the kernel singularity w = 1 with algebraic
/// grading (exponent 3) in the radius, tensor Gauss-Legendre. The refinement
/// parameter scales both the radial and angular node counts.
double oracle_eig(const std::function<double(Complex)>& kernel, int m, SpectralIndex idx,
                  int refinement);

/// Degree-l Funk-Hecke eigenvalue of |xi - eta|^{-lambda} on S^n (n = 1, 2) by
/// one-dimensional quadrature of the zonal reduction with weight
/// (1-t^2)^{(n-2)/2}, t = cos(theta), graded towards the singularity t = 1.
double real_sphere_eig(int n, double lambda, int l, int refinement);

}  // namespace crsphere
