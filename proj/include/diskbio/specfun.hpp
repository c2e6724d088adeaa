#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "diskbio/geometry.hpp"

namespace diskbio {

using Complex = std::complex<double>;

/// Index pair (l, m) of a projected spherical harmonic, |m| <= l.
struct ModeIndex {
    int l = 0;
    int m = 0;

    ModeIndex() = default;
    ModeIndex(int l_, int m_) : l(l_), m(m_) {
        if (l < 0 || std::abs(m) > l)
            throw std::domain_error("ModeIndex: require 0 <= |m| <= l");
    }

    bool even_parity() const { return (l + m) % 2 == 0; }
};

namespace detail {

// Wallis-type product w_k = prod_{j=1..k} (2j-1)/(2j) = Gamma(k+1/2)/(sqrt(pi) k!).
// Exact rational factors keep the accumulated rounding near sqrt(k) ulp, which
// the recursion-residual tolerance (1e-12 relative up to l = 200) needs;
// a plain lgamma route loses ~1e-13 per call at that size.
inline double wallis(int k) {
    double w = 1.0;
    for (int j = 1; j <= k; ++j) w *= (2.0 * j - 1.0) / (2.0 * j);
    return w;
}

// R(a) = Gamma(a)/Gamma(a + 1/2) for a = k or k + 1/2, k integer >= 0 (a > 0).
//   R(k + 1/2) = sqrt(pi) w_k
//   R(k)       = 1 / (k sqrt(pi) w_k)
inline double gamma_half_ratio_twice(int twice_a) {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    if (twice_a <= 0) throw std::domain_error("gamma ratio needs positive argument");
    if (twice_a % 2 == 1) {
        int k = (twice_a - 1) / 2;
        return sqrt_pi * wallis(k);
    }
    int k = twice_a / 2;
    return 1.0 / (k * sqrt_pi * wallis(k));
}

} // namespace detail

/// lambda_l^m = Gamma((l+m+1)/2) Gamma((l-m+1)/2) / (Gamma((l+m+2)/2) Gamma((l-m+2)/2)).
/// Symmetric in m <-> -m; positive for all |m| <= l.
inline double lambda(const ModeIndex& mode) {
    int l = mode.l, m = std::abs(mode.m);
    // lambda = R((l+m+1)/2) * R((l-m+1)/2) with R(a) = Gamma(a)/Gamma(a+1/2)
    return detail::gamma_half_ratio_twice(l + m + 1) * detail::gamma_half_ratio_twice(l - m + 1);
}

/// Residual of the three-term recursion
///   4/lambda_l^m = 1/2 [ (l+m)(l-m+1) lambda_l^{m-1} + (l-m)(l+m+1) lambda_l^{m+1} ].
/// The products with out-of-range orders are evaluated in the Gamma-limit sense:
///   (l-m) Gamma((l-m)/2) = 2 Gamma((l-m+2)/2), so the m = +-l terms stay finite
/// and nonzero; dropping them as 0 * inf breaks the identity at every edge order,
/// not only at (0,0).
inline double lambda_recursion_residual(const ModeIndex& mode) {
    int l = mode.l, m = std::abs(mode.m);
    if (l == 0) throw std::domain_error("recursion excludes the (0,0) mode");
    using detail::gamma_half_ratio_twice;
    // T+ = (l-m)(l+m+1) lambda_l^{m+1} = 2 (l+m+1) R((l+m+2)/2) / R((l-m+1)/2)
    double t_plus = 2.0 * (l + m + 1) * gamma_half_ratio_twice(l + m + 2) / gamma_half_ratio_twice(l - m + 1);
    // T- = (l+m)(l-m+1) lambda_l^{m-1} = 2 (l-m+1) R((l-m+2)/2) / R((l+m+1)/2)
    double t_minus = 2.0 * (l - m + 1) * gamma_half_ratio_twice(l - m + 2) / gamma_half_ratio_twice(l + m + 1);
    return 4.0 / lambda(mode) - 0.5 * (t_minus + t_plus);
}

/// Associated Legendre function P_l^m(t) with the Condon-Shortley phase,
/// upward recurrence in l at fixed m from the double-factorial diagonal.
/// Negative orders follow P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
inline double assoc_legendre(int l, int m, double t) {
    if (l < 0 || std::abs(m) > l) throw std::domain_error("assoc_legendre: require |m| <= l");
    if (t < -1.0 || t > 1.0) throw std::domain_error("assoc_legendre: argument outside [-1,1]");
    if (m < 0) {
        double ratio = 1.0; // (l-|m|)! / (l+|m|)!
        for (int j = l + m + 1; j <= l - m; ++j) ratio /= j;
        return ((-m) % 2 ? -1.0 : 1.0) * ratio * assoc_legendre(l, -m, t);
    }
    double s = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
    double pmm = 1.0;
    for (int j = 1; j <= m; ++j) pmm *= -(2.0 * j - 1.0) * s;
    if (l == m) return pmm;
    double pm1 = (2.0 * m + 1.0) * t * pmm;
    if (l == m + 1) return pm1;
    double pa = pmm, pb = pm1;
    for (int ll = m + 2; ll <= l; ++ll) {
        double pc = ((2.0 * ll - 1.0) * t * pb - (ll + m - 1.0) * pa) / (ll - m);
        pa = pb;
        pb = pc;
    }
    return pb;
}

namespace detail {

// Normalized radial part gamma_l^m P_l^m(t) for m >= 0, stable for large l
// (the plain P_l^m overflows past l ~ 150 while gamma underflows).
inline double psh_radial(int l, int m, double t) {
    double s2 = std::max(0.0, (1.0 - t) * (1.0 + t));
    double qmm = std::sqrt((2.0 * m + 1.0) / (4.0 * std::numbers::pi) * wallis(m)) *
                 std::pow(std::sqrt(s2), m);
    if (l == m) return qmm;
    double q1 = std::sqrt(2.0 * m + 3.0) * t * qmm;
    if (l == m + 1) return q1;
    double qa = qmm, qb = q1;
    for (int ll = m + 2; ll <= l; ++ll) {
        double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(m) * m));
        double b = std::sqrt((double(ll - 1) * (ll - 1) - double(m) * m) /
                             (4.0 * double(ll - 1) * (ll - 1) - 1.0));
        double qc = a * (t * qb - b * qa);
        qa = qb;
        qb = qc;
    }
    return qb;
}

} // namespace detail

/// Projected spherical harmonic y_l^m(x) = gamma_l^m e^{i m theta} P_l^m(omega(x))
/// on the unit disk; y_l^{-m} = (-1)^m conj(y_l^m).
inline Complex psh(const ModeIndex& mode, const PolarPoint& x) {
    if (x.r > 1.0 + 1e-14) throw std::domain_error("psh: point outside the closed unit disk");
    int m = std::abs(mode.m);
    double radial = detail::psh_radial(mode.l, m, omega(1.0, std::min(x.r, 1.0)));
    Complex v = radial * std::exp(Complex(0.0, m * x.theta));
    if (mode.m < 0) v = (m % 2 ? -1.0 : 1.0) * std::conj(v);
    return v;
}

/// y_l^m(x) / omega(x). For odd parity l+m this extends continuously to r = 1.
inline Complex psh_over_omega(const ModeIndex& mode, const PolarPoint& x) {
    double w = omega(1.0, x.r);
    if (w <= 0.0) throw std::domain_error("psh_over_omega: omega vanishes at the rim");
    return psh(mode, x) / w;
}

/// Poisson kernel p(rho, theta) = (1/2pi) (1 - rho^2) / (1 + rho^2 - 2 rho cos theta).
inline double poisson_kernel(double rho, double theta) {
    if (std::abs(rho) >= 1.0) throw std::domain_error("poisson_kernel: |rho| < 1 required");
    double denom = 1.0 + rho * rho - 2.0 * rho * std::cos(theta);
    return (1.0 - rho * rho) / denom / (2.0 * std::numbers::pi);
}

/// Symmetric partial sum (1/2pi) sum_{|n|<=N} rho^|n| e^{i n theta} (real part).
inline double poisson_kernel_series(double rho, double theta, int N) {
    if (std::abs(rho) >= 1.0) throw std::domain_error("poisson_kernel_series: |rho| < 1 required");
    double s = 1.0, p = 1.0;
    for (int n = 1; n <= N; ++n) {
        p *= rho;
        s += 2.0 * p * std::cos(n * theta);
    }
    return s / (2.0 * std::numbers::pi);
}

enum class KineticSign { plus, minus };

/// Ladder coefficient in L+- y_l^m = c y_l^{m+-1} / omega; zero when the
/// shifted order leaves |m| <= l.
inline double kinetic_coeff(const ModeIndex& mode, KineticSign sign) {
    int l = mode.l, m = mode.m;
    double v = (sign == KineticSign::plus) ? double(l - m) * (l + m + 1)
                                           : double(l + m) * (l - m + 1);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

/// Analytic kinetic moment L+- y_l^m(x) = sqrt((l -+ m)(l +- m + 1)) y_l^{m +- 1}(x)/omega(x).
inline Complex kinetic_psh(const ModeIndex& mode, KineticSign sign, const PolarPoint& x) {
    if (x.r >= 1.0) throw std::domain_error("kinetic_psh: undefined on the rim (omega = 0)");
    double c = kinetic_coeff(mode, sign);
    if (c == 0.0) return {0.0, 0.0};
    int m1 = mode.m + (sign == KineticSign::plus ? 1 : -1);
    return c * psh_over_omega(ModeIndex(mode.l, m1), x);
}

/// Central-difference kinetic moment L+- f = e^{+-i theta}(+- df/dr + (i/r) df/dtheta),
/// O(h^2) accurate; requires r > h so the radial stencil stays inside the domain.
inline Complex kinetic_fd(const std::function<Complex(const PolarPoint&)>& f, KineticSign sign,
                          const PolarPoint& x, double h) {
    if (x.r <= h) throw std::domain_error("kinetic_fd: step too large for radius");
    Complex df_dr = (f(PolarPoint(x.r + h, x.theta)) - f(PolarPoint(x.r - h, x.theta))) / (2.0 * h);
    Complex df_dth =
        (f(PolarPoint(x.r, x.theta + h)) - f(PolarPoint(x.r, x.theta - h))) / (2.0 * h);
    double s = (sign == KineticSign::plus) ? 1.0 : -1.0;
    return std::exp(Complex(0.0, s * x.theta)) * (s * df_dr + Complex(0.0, 1.0) / x.r * df_dth);
}

} // namespace diskbio
