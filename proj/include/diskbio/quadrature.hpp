#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "diskbio/gauss.hpp"
#include "diskbio/geometry.hpp"
#include "diskbio/specfun.hpp"

namespace diskbio {

enum class PairRelation { coincident, edge, vertex, far };

enum class RuleKind {
    triangle_regular,
    pair_coincident,
    pair_edge,
    pair_vertex,
    pair_far,
    disk_weighted
};

/// Quadrature rule. Triangle rules carry 2-D nodes on the reference simplex
/// {0 <= s2 <= s1 <= 1}; pair rules carry 4-D nodes (x-hat, y-hat) on the
/// simplex product; disk-weighted rules carry Cartesian nodes on the disk with
/// the omega^{-1} weight folded into the weights.
struct QuadRule {
    RuleKind kind = RuleKind::triangle_regular;
    std::vector<std::array<double, 4>> nodes;
    std::vector<double> weights;

    size_t size() const { return weights.size(); }
};

/// Chart point V0 + s1 (V1 - V0) + s2 (V2 - V1) of simplex coordinates.
inline Vec2 simplex_chart(const std::array<Vec2, 3>& v, double s1, double s2) {
    return v[0] + s1 * (v[1] - v[0]) + s2 * (v[2] - v[1]);
}

/// Barycentric weights of the chart point w.r.t. (V0, V1, V2).
inline std::array<double, 3> simplex_bary(double s1, double s2) {
    return {1.0 - s1, s1 - s2, s2};
}

/// Rule on the reference simplex exact for polynomials of total degree
/// `order`. Order 1 is the centroid rule and order 2 the classic symmetric
/// 3-point rule; higher orders tensorize Gauss through the Duffy collapse,
/// which keeps every weight positive.
inline QuadRule triangle_quad(int order) {
    if (order < 1 || order > 10) throw std::invalid_argument("triangle_quad: order in 1..10");
    QuadRule rule;
    rule.kind = RuleKind::triangle_regular;
    if (order == 1) {
        rule.nodes.push_back({2.0 / 3.0, 1.0 / 3.0, 0, 0});
        rule.weights.push_back(0.5);
        return rule;
    }
    if (order == 2) {
        // barycentric (2/3,1/6,1/6) permutations in simplex coordinates
        const std::array<std::array<double, 2>, 3> pts = {{{1.0 / 3.0, 1.0 / 6.0},
                                                           {5.0 / 6.0, 1.0 / 6.0},
                                                           {5.0 / 6.0, 2.0 / 3.0}}};
        for (const auto& p : pts) {
            rule.nodes.push_back({p[0], p[1], 0, 0});
            rule.weights.push_back(1.0 / 6.0);
        }
        return rule;
    }
    int n = (order + 3) / 2; // Duffy needs 2n-1 >= order+1
    const GaussRule& g = gauss_legendre(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double u = 0.5 * (g.x[i] + 1.0), v = 0.5 * (g.x[j] + 1.0);
            rule.nodes.push_back({u, u * v, 0, 0});
            rule.weights.push_back(0.25 * g.w[i] * g.w[j] * u);
        }
    return rule;
}

namespace detail {

inline void push_pair(QuadRule& rule, double x1, double x2, double y1, double y2, double w) {
    rule.nodes.push_back({x1, x2, y1, y2});
    rule.weights.push_back(w);
    // mirrored orientation covers the swapped half of the product domain
    rule.nodes.push_back({y1, y2, x1, x2});
    rule.weights.push_back(w);
}

} // namespace detail

/// 4-D tensor rules for the Galerkin pair integrals with a 1/|x-y| kernel
/// singularity. The three adjacent relations split the product domain into
/// subdomains where the singular set lies on a coordinate face and absorb the
/// singularity with a polar-type scaling; the resulting integrands are smooth,
/// so tensor Gauss of `order` points per direction converges spectrally.
///
/// Chart conventions the caller must honor:
///   coincident: identical charts;
///   edge: both charts list the shared edge as (V0, V1), same order;
///   vertex: both charts start at the shared vertex V0.
inline QuadRule singular_pair_quad(PairRelation relation, int order) {
    if (order < 2 || order > 8) throw std::invalid_argument("singular_pair_quad: order in 2..8");
    QuadRule rule;
    const GaussRule& g = gauss_legendre(order);
    std::vector<double> q(order), qw(order);
    for (int i = 0; i < order; ++i) {
        q[i] = 0.5 * (g.x[i] + 1.0);
        qw[i] = 0.5 * g.w[i];
    }
    auto each4 = [&](auto&& body) {
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j)
                for (int k = 0; k < order; ++k)
                    for (int l = 0; l < order; ++l)
                        body(q[i], q[j], q[k], q[l], qw[i] * qw[j] * qw[k] * qw[l]);
    };

    switch (relation) {
        case PairRelation::coincident: {
            rule.kind = RuleKind::pair_coincident;
            // y-hat = x-hat + xi * w_k(eta) over the hexagon cone k
            for (int cone = 0; cone < 3; ++cone)
                each4([&](double xi, double eta, double s, double t, double w4) {
                    double w1, w2, xh1, xh2;
                    if (cone == 0) {
                        w1 = 1.0;
                        w2 = eta;
                        xh1 = (1 - xi) * s;
                    } else if (cone == 1) {
                        w1 = 1.0 - eta;
                        w2 = 1.0;
                        xh1 = xi * eta + (1 - xi) * s;
                    } else {
                        w1 = -eta;
                        w2 = 1.0 - eta;
                        xh1 = xi + (1 - xi) * s;
                    }
                    xh2 = (1 - xi) * s * t;
                    double w = w4 * xi * (1 - xi) * (1 - xi) * s;
                    detail::push_pair(rule, xh1, xh2, xh1 + xi * w1, xh2 + xi * w2, w);
                });
            break;
        }
        case PairRelation::edge: {
            rule.kind = RuleKind::pair_edge;
            // x-hat = (lam, mu), y-hat = (lam - delta, nu); singular at
            // (mu, nu, delta) = 0, scaled by rho with the leading variable split
            for (int sub = 0; sub < 3; ++sub)
                each4([&](double rho, double c, double b, double t, double w4) {
                    double mu, de, nu, jac;
                    if (sub == 0) {
                        mu = rho;
                        de = rho * c;
                        nu = rho * (1 - c) * b;
                        jac = rho * rho * (1 - c);
                    } else if (sub == 1) {
                        mu = rho * b;
                        de = rho * c / (1 + c);
                        nu = rho / (1 + c);
                        jac = rho * rho / ((1 + c) * (1 + c));
                    } else {
                        mu = rho * b;
                        de = rho / (1 + c);
                        nu = rho * c / (1 + c);
                        jac = rho * rho / ((1 + c) * (1 + c));
                    }
                    double lam = rho + t * (1 - rho);
                    detail::push_pair(rule, lam, mu, lam - de, nu, w4 * jac * (1 - rho));
                });
            break;
        }
        case PairRelation::vertex: {
            rule.kind = RuleKind::pair_vertex;
            each4([&](double xi, double e1, double e2, double e3, double w4) {
                detail::push_pair(rule, xi, xi * e1, xi * e2, xi * e2 * e3,
                                  w4 * xi * xi * xi * e2);
            });
            break;
        }
        case PairRelation::far: {
            rule.kind = RuleKind::pair_far;
            QuadRule tri = triangle_quad(order);
            for (size_t i = 0; i < tri.size(); ++i)
                for (size_t j = 0; j < tri.size(); ++j) {
                    rule.nodes.push_back(
                        {tri.nodes[i][0], tri.nodes[i][1], tri.nodes[j][0], tri.nodes[j][1]});
                    rule.weights.push_back(tri.weights[i] * tri.weights[j]);
                }
            break;
        }
    }
    return rule;
}

/// Rule for int_{D_a} f(x) omega_a(x)^{-1} dD. The substitution r = a sin(phi)
/// removes the rim singularity exactly: the integrand becomes a f sin(phi)
/// on [0, pi/2] x [0, 2pi), Gauss in phi and periodic trapezoid in theta.
inline QuadRule weighted_disk_quad(double a, int n_r, int n_theta) {
    if (n_r < 1 || n_theta < 1) throw std::invalid_argument("weighted_disk_quad: n >= 1");
    QuadRule rule;
    rule.kind = RuleKind::disk_weighted;
    const GaussRule& g = gauss_legendre(n_r);
    const double pi = std::numbers::pi;
    for (int i = 0; i < n_r; ++i) {
        double phi = 0.25 * pi * (g.x[i] + 1.0);
        double wphi = 0.25 * pi * g.w[i];
        double r = a * std::sin(phi);
        for (int j = 0; j < n_theta; ++j) {
            double th = 2.0 * pi * j / n_theta;
            rule.nodes.push_back({r * std::cos(th), r * std::sin(th), 0, 0});
            rule.weights.push_back(a * std::sin(phi) * wphi * 2.0 * pi / n_theta);
        }
    }
    return rule;
}

/// Apply a disk-weighted rule: sum_i w_i f(x_i), with omega^{-1} already in w.
template <typename F>
auto weighted_disk_apply(const QuadRule& rule, F&& f) {
    if (rule.kind != RuleKind::disk_weighted)
        throw std::invalid_argument("weighted_disk_apply: rule is not disk-weighted");
    using R = decltype(f(Vec2{}));
    R s{};
    for (size_t i = 0; i < rule.size(); ++i)
        s += rule.weights[i] * f(Vec2{rule.nodes[i][0], rule.nodes[i][1]});
    return s;
}

/// Expansion coefficient (f, y_l^m)_{1/omega} = int f conj(y_l^m) omega^{-1} dD
/// on the unit disk; returns 1/2 delta for f = y_{l'}^{m'}.
inline Complex psh_project(const std::function<Complex(const PolarPoint&)>& f,
                           const ModeIndex& mode, const QuadRule& rule) {
    return weighted_disk_apply(rule, [&](const Vec2& p) {
        PolarPoint x = to_polar(p);
        return f(x) * std::conj(psh(mode, x));
    });
}

} // namespace diskbio
