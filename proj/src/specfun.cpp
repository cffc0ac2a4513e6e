#include "crsphere/specfun.hpp"

#include <cmath>
#include <limits>

namespace crsphere {

double pairwise_sum(const double* data, Eigen::Index n) {
    if (n <= 32) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const Eigen::Index half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

namespace {

// Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2

double lanczos_series(double x) {
    double s = kLanczos[0];
    for (int k = 1; k < 15; ++k) s += kLanczos[k] / (x + k - 1.0);
    return s;
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double log_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("log_gamma: argument must be finite and positive");
    // Below 1/2 shift once: ln Gamma(x) = ln Gamma(x+1) - ln x keeps full
    // relative accuracy where ln Gamma grows like -ln x.
    if (x < 0.5) return log_gamma(x + 1.0) - std::log(x);
    // ln Gamma(x) = ln(sqrt(2 pi)) + (x - 1/2) ln(x + g - 1/2) - (x + g - 1/2) + ln A_g(x)
    const double t = x + kLanczosG - 0.5;
    return kHalfLog2Pi + (x - 0.5) * std::log(t) - t + std::log(lanczos_series(x));
}

double sin_pi(double x) {
    const double n = std::round(x);
    const double f = x - n;
    const double s = std::sin(M_PI * f);
    const bool odd = std::fabs(std::fmod(n, 2.0)) == 1.0;
    return odd ? -s : s;
}

SignedLogGamma log_gamma_signed(double x) {
    if (!std::isfinite(x)) throw std::domain_error("log_gamma_signed: non-finite argument");
    if (is_nonpositive_integer(x))
        throw std::domain_error("log_gamma_signed: pole at non-positive integer " +
                                std::to_string(x));
    if (x > 0.0) return {log_gamma(x), +1};
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), 1 - x > 1 here.
    const double s = sin_pi(x);
    return {std::log(M_PI) - std::log(std::fabs(s)) - log_gamma(1.0 - x), s > 0.0 ? +1 : -1};
}

double gamma_ratio(double a, double b) {
    if (is_nonpositive_integer(a))
        throw std::domain_error("gamma_ratio: numerator Gamma(" + std::to_string(a) +
                                ") is a pole");
    if (is_nonpositive_integer(b))
        throw std::domain_error("gamma_ratio: denominator Gamma(" + std::to_string(b) +
                                ") is a pole");
    const SignedLogGamma la = log_gamma_signed(a);
    const SignedLogGamma lb = log_gamma_signed(b);
    return la.sign * lb.sign * std::exp(la.log_abs - lb.log_abs);
}

double jacobi_p(int n, double a, double b, double x) {
    if (n < 0) throw std::domain_error("jacobi_p: negative degree");
    if (!(a > -1.0) || !(b > -1.0)) throw std::domain_error("jacobi_p: parameters must be > -1");
    if (std::fabs(x) > 1.0 + 1e-9) throw std::domain_error("jacobi_p: argument outside [-1,1]");
    x = std::clamp(x, -1.0, 1.0);

    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * (a + b + 2.0) * x + 0.5 * (a - b);
    // Forward recurrence; the denominator 2k(k+a+b)(2k+a+b-2) is positive for
    // k >= 2 and a,b > -1, so starting from the closed n=0,1 values is safe.
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + a + b;
        const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        const double a2 = (c - 1.0) * (a * a - b * b);
        const double a3 = (c - 1.0) * c * (c - 2.0);
        const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        const double next = ((a2 + a3 * x) * p - a4 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    return p;
}

double jacobi_p_at_one(int n, double a) {
    // binom(n+a, n) = Gamma(n+a+1) / (Gamma(a+1) n!)
    return std::exp(log_gamma(n + a + 1.0) - log_gamma(a + 1.0) - log_gamma(n + 1.0));
}

namespace {

Complex pow_int(Complex w, int n) {
    Complex r(1.0, 0.0);
    Complex base = w;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

}  // namespace

Complex disc_poly(SpectralIndex idx, int m, Complex w) {
    if (idx.j < 0 || idx.k < 0) throw std::domain_error("disc_poly: negative index");
    if (m < 1) throw std::domain_error("disc_poly: m must be positive");
    const double r2 = std::norm(w);
    if (r2 > 1.0 + 3e-12) throw std::domain_error("disc_poly: |w| > 1");

    if (idx.j < idx.k) return std::conj(disc_poly({idx.k, idx.j}, m, w));

    const int d = idx.j - idx.k;
    const int n = idx.k;
    const double x = std::clamp(2.0 * r2 - 1.0, -1.0, 1.0);
    const double radial = jacobi_p(n, m - 1.0, d, x) / jacobi_p_at_one(n, m - 1.0);
    return pow_int(w, d) * radial;
}

}  // namespace crsphere
