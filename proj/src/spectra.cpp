#include "crsphere/spectra.hpp"

#include "crsphere/quadrature.hpp"
#include "crsphere/specfun.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace crsphere {

namespace {

void check_alpha(double alpha, int m) {
    if (!(alpha > -1.0) || !(alpha < (m + 1.0) / 2.0))
        throw std::domain_error("eigenvalue: alpha must lie in (-1, (m+1)/2)");
    if (alpha == 0.0)
        throw std::domain_error("eigenvalue: alpha = 0 limit convention not implemented");
}

}  // namespace

double eig_dist_kernel(double alpha, int m, SpectralIndex idx) {
    check_alpha(alpha, m);
    if (idx.j < 0 || idx.k < 0) throw std::domain_error("eig_dist_kernel: negative index");
    if (idx.j > idx.k) std::swap(idx.j, idx.k);  // bitwise-exact index symmetry
    const SignedLogGamma num = log_gamma_signed(m + 1.0 - 2.0 * alpha);
    const SignedLogGamma den = log_gamma_signed(alpha);
    const SignedLogGamma ja = log_gamma_signed(idx.j + alpha);
    const SignedLogGamma jb = log_gamma_signed(idx.j + m + 1.0 - alpha);
    const SignedLogGamma ka = log_gamma_signed(idx.k + alpha);
    const SignedLogGamma kb = log_gamma_signed(idx.k + m + 1.0 - alpha);
    const double log_mag = std::log(2.0) + (m + 1.0) * std::log(M_PI) + num.log_abs -
                           2.0 * den.log_abs + ja.log_abs - jb.log_abs + ka.log_abs - kb.log_abs;
    const int sign = num.sign * ja.sign * jb.sign * ka.sign * kb.sign;  // den sign squares away
    return sign * std::exp(log_mag);
}

double eig_dist_kernel_weighted(double alpha, int m, SpectralIndex idx, double n_symbol) {
    if (idx.j > idx.k) std::swap(idx.j, idx.k);
    const double base = eig_dist_kernel(alpha, m, idx);
    const double j = idx.j, k = idx.k;
    if (alpha == 1.0) {
        // The prefactor (alpha-1) cancels against (j-1+alpha) resp. (k-1+alpha)
        // whenever that index is zero; the 0/0 resolves to a nonzero limit.
        double corr = 0.0;
        if (idx.j == 0 && idx.k == 0)
            corr = n_symbol * (m - 1.0) / (static_cast<double>(m) * m);
        else if (idx.j == 0)
            corr = n_symbol * (m - 1.0) / ((k + m) * static_cast<double>(m));
        return base * (1.0 - corr);
    }
    const double d1 = j - 1.0 + alpha;
    const double d2 = j + m + 1.0 - alpha;
    const double d3 = k - 1.0 + alpha;
    const double d4 = k + m + 1.0 - alpha;
    if (d1 == 0.0 || d3 == 0.0)
        throw std::domain_error("eig_dist_kernel_weighted: vanishing factor (j-1+alpha) or "
                                "(k-1+alpha)");
    const double corr = (alpha - 1.0) * (m + 1.0 - 2.0 * alpha) *
                        (2.0 * j * k + n_symbol * (j + k - 1.0 + alpha)) / (d1 * d2 * d3 * d4);
    return base * (1.0 - corr);
}

double eig_dist_kernel_weighted(double alpha, int m, SpectralIndex idx) {
    return eig_dist_kernel_weighted(alpha, m, idx, static_cast<double>(m));
}

double re_kernel_eig(double alpha, int m, SpectralIndex idx) {
    if (!(alpha > 0.0)) throw std::domain_error("re_kernel_eig: need alpha > 0");
    double shifted;
    if (alpha == 1.0) {
        // |1-w|^{-2(alpha-1)} degenerates to the constant kernel, whose only
        // nonzero eigenvalue is the total measure on (0,0)
        shifted = (idx.j == 0 && idx.k == 0)
                      ? 2.0 * std::pow(M_PI, m + 1) / std::exp(log_gamma(m + 1.0))
                      : 0.0;
    } else {
        shifted = eig_dist_kernel(alpha - 1.0, m, idx);
    }
    return 0.5 * (eig_dist_kernel(alpha, m, idx) + eig_dist_kernel_weighted(alpha, m, idx) -
                  shifted);
}

double r2v_best_c(const KernelSpec& spec, int cutoff) {
    validate(spec);
    if (spec.family != SphereFamily::CRSphere)
        throw std::invalid_argument("r2v_best_c: CR-sphere kernels only");
    if (cutoff < 1) throw std::domain_error("r2v_best_c: cutoff must be >= 1");
    const int m = spec.dim;
    const double lambda = spec.lambda;
    const double alpha = lambda / 4.0;
    const double low = lambda / (4.0 * (m + 1.0) - lambda);
    const double gap = (2.0 * (m + 1.0) - lambda) / (4.0 * (m + 1.0) - lambda);
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= cutoff; ++j) {
        for (int k = 0; k <= cutoff - j; ++k) {
            if (j + k < 1) continue;
            const double e = eig_dist_kernel(alpha, m, {j, k});
            const double f = re_kernel_eig(alpha, m, {j, k});
            best = std::min(best, (f - low * e) / (gap * e));
        }
    }
    return best;
}

double sublaplacian_eig(int m, SpectralIndex idx) {
    if (m < 1 || idx.j < 0 || idx.k < 0) throw std::domain_error("sublaplacian_eig: bad index");
    return (idx.j + m / 2.0) * (idx.k + m / 2.0);
}

double sharp_constant(const KernelSpec& spec) {
    validate(spec);
    const double lambda = spec.lambda;
    if (spec.family == SphereFamily::CRSphere) {
        const int m = spec.dim;
        const double Q = 2.0 * m + 2.0;
        const double log_sphere = std::log(2.0) + (m + 1.0) * std::log(M_PI) - log_gamma(m + 1.0);
        return std::exp((lambda / Q) * log_sphere + log_gamma(m + 1.0) +
                        log_gamma((Q - lambda) / 2.0) - 2.0 * log_gamma((2.0 * Q - lambda) / 4.0));
    }
    const double n = spec.dim;
    return std::exp((lambda / 2.0) * std::log(M_PI) + log_gamma((n - lambda) / 2.0) -
                    log_gamma(n - lambda / 2.0) +
                    (1.0 - lambda / n) * (log_gamma(n) - log_gamma(n / 2.0)));
}

bool positivity_scan(const KernelSpec& spec, int cutoff) {
    validate(spec);
    if (spec.family != SphereFamily::CRSphere)
        throw std::invalid_argument("positivity_scan: CR-sphere kernels only");
    if (cutoff < 0) throw std::domain_error("positivity_scan: negative cutoff");
    const double alpha = spec.lambda / 4.0;
    for (int j = 0; j <= cutoff; ++j)
        for (int k = 0; k <= cutoff - j; ++k)
            if (!(eig_dist_kernel(alpha, spec.dim, {j, k}) > 0.0)) return false;
    return true;
}

namespace {

// Quintic map of [-1,1] onto itself with double zeros of the derivative at the
// endpoints; flattens the angular integrand where the radial extent vanishes.
inline double smooth_ramp(double v) { return 0.125 * v * (15.0 + v * v * (-10.0 + 3.0 * v * v)); }
inline double smooth_ramp_deriv(double v) {
    const double s = 1.0 - v * v;
    return 1.875 * s * s;
}

}  // namespace

double oracle_eig(const std::function<double(Complex)>& kernel, int m, SpectralIndex idx,
                  int refinement) {
    if (refinement < 1) throw std::domain_error("oracle_eig: refinement must be >= 1");
    if (m < 1) throw std::domain_error("oracle_eig: m must be positive");

    const int n_r = 24 * refinement;
    const int n_psi = 24 * refinement;
    RealVector sr, wr, sv, wv;
    gauss_legendre(n_r, sr, wr);    // radial variable, mapped to [0,1] then graded
    gauss_legendre(n_psi, sv, wv);  // angular variable on [-1,1]

    const double c_m = 2.0 * std::pow(M_PI, m) / std::exp(log_gamma(static_cast<double>(m)));

    // Disc coordinates centred at the singularity: w = 1 - rho e^{i psi},
    // psi in (-pi/2, pi/2), rho in (0, 2 cos psi); dA = rho d(rho) d(psi).
    double total = 0.0;
    for (int a = 0; a < n_psi; ++a) {
        const double psi = 0.5 * M_PI * smooth_ramp(sv(a));
        const double psi_jac = 0.5 * M_PI * smooth_ramp_deriv(sv(a)) * wv(a);
        const double rho_max = 2.0 * std::cos(psi);
        const Complex dir = std::polar(1.0, psi);
        double slice = 0.0;
        for (int b = 0; b < n_r; ++b) {
            const double s = 0.5 * (sr(b) + 1.0);  // [0,1]
            const double rho = rho_max * s * s * s;
            const double rho_jac = rho_max * 3.0 * s * s * 0.5 * wr(b);
            const Complex w = 1.0 - rho * dir;
            const double one_minus = std::max(0.0, 1.0 - std::norm(w));
            const double weight = (m == 1) ? 1.0 : std::pow(one_minus, m - 1.0);
            const double val =
                kernel(w) * std::real(std::conj(disc_poly(idx, m, w))) * weight * rho;
            slice += val * rho_jac;
        }
        total += slice * psi_jac;
    }
    return c_m * total;
}

double real_sphere_eig(int n, double lambda, int l, int refinement) {
    if (n != 1 && n != 2) throw std::domain_error("real_sphere_eig: only n = 1, 2");
    if (!(lambda > 0.0) || !(lambda < n))
        throw std::domain_error("real_sphere_eig: lambda must lie in (0, n)");
    if (l < 0 || refinement < 1) throw std::domain_error("real_sphere_eig: bad parameters");

    // theta parametrization of the zonal integral; |xi - eta| = 2 sin(theta/2).
    // Grading theta = pi u^g clusters nodes at the kernel singularity theta = 0;
    // S^1 carries the bare theta^{-lambda} singularity and needs the harder map.
    const int g = (n == 1) ? 8 : 4;
    const int nodes = 64 * refinement;
    RealVector su, wu;
    gauss_legendre(nodes, su, wu);
    double total = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double u = 0.5 * (su(i) + 1.0);
        const double theta = M_PI * std::pow(u, g);
        const double jac = M_PI * g * std::pow(u, g - 1) * 0.5 * wu(i);
        const double t = std::cos(theta);
        const double sh = std::sin(0.5 * theta);
        const double dist2 = 4.0 * sh * sh;  // 2 - 2 cos(theta), stable near theta = 0
        const double kern = std::pow(dist2, -lambda / 2.0);
        double val;
        if (n == 1) {
            val = 2.0 * kern * std::cos(l * theta);  // |S^0| = 2; Chebyshev zonal mode
        } else {
            const double legendre = jacobi_p(l, 0.0, 0.0, t);
            val = 2.0 * M_PI * kern * legendre * std::sin(theta);  // |S^1| = 2 pi
        }
        total += val * jac;
    }
    return total;
}

}  // namespace crsphere
