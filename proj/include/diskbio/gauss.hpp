#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace diskbio {

/// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on P_n.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline const GaussRule& gauss_legendre(int n) {
    static thread_local std::vector<GaussRule> cache;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    if (int(cache.size()) <= n) cache.resize(n + 1);
    GaussRule& rule = cache[n];
    if (!rule.x.empty()) return rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        rule.x[i] = t;
        rule.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return rule;
}

/// Sum of f over a Gauss rule mapped to [a, b].
template <typename F>
double integrate_gauss(F&& f, double a, double b, int n) {
    const GaussRule& g = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += g.w[i] * f(mid + half * g.x[i]);
    return s * half;
}

/// Composite rule over `panels` equal subintervals.
template <typename F>
double integrate_panels(F&& f, double a, double b, int panels, int n) {
    double s = 0.0, h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) s += integrate_gauss(f, a + p * h, a + (p + 1) * h, n);
    return s;
}

/// Composite rule with panels graded geometrically toward the endpoint `sing`
/// of [a, b] (sing must be a or b); resolves integrable endpoint singularities.
template <typename F>
double integrate_graded(F&& f, double a, double b, double sing, int panels, int n,
                        double ratio = 0.3) {
    double L = b - a;
    if (L <= 0.0) return 0.0;
    double s = 0.0, hi = L;
    for (int p = 0; p < panels; ++p) {
        double lo = (p + 1 == panels) ? 0.0 : hi * ratio;
        double x0 = (sing == a) ? a + lo : b - hi;
        double x1 = (sing == a) ? a + hi : b - lo;
        s += integrate_gauss(f, x0, x1, n);
        hi = lo;
    }
    return s;
}

} // namespace diskbio
