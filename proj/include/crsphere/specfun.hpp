#pragma once

#include "crsphere/types.hpp"

namespace crsphere {

/// ln Gamma(x) for x > 0. Lanczos evaluation, relative error below 1e-14 on
/// [1e-3, 1e6]. Throws std::domain_error for non-finite or non-positive x.
double log_gamma(double x);

/// sin(pi*x) with argument reduction at the integers, accurate near the
/// poles of Gamma where the naive product pi*x loses digits.
double sin_pi(double x);

struct SignedLogGamma {
    double log_abs;  // ln |Gamma(x)|
    int sign;        // sign of Gamma(x), +1 or -1
};

/// ln |Gamma(x)| and sign for any x that is not a pole (non-positive integer).
/// Negative arguments go through the reflection formula.
SignedLogGamma log_gamma_signed(double x);

/// Gamma(a)/Gamma(b). Either argument may be a negative non-integer.
double gamma_ratio(double a, double b);

/// Jacobi polynomial P_n^{(a,b)}(x), a,b > -1, by the three-term recurrence.
double jacobi_p(int n, double a, double b, double x);

/// Value at x = 1, i.e. binom(n+a, n).
double jacobi_p_at_one(int n, double a);

/// Disc (generalized Zernike) polynomial R_{j,k}(w) on the closed unit disc,
/// normalized so R_{j,k}(1) = 1. For j >= k,
///   R_{j,k}(w) = w^{j-k} P_k^{(m-1, j-k)}(2|w|^2 - 1) / P_k^{(m-1, j-k)}(1),
/// and R_{j,k}(w) = conj(R_{k,j}(w)) for j < k. These are the zonal functions
/// of the bigraded harmonic decomposition on S^{2m+1}.
Complex disc_poly(SpectralIndex idx, int m, Complex w);

}  // namespace crsphere
