#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskbio/kernels.hpp"
#include "diskbio/mesh.hpp"
#include "diskbio/parallel.hpp"
#include "diskbio/quadrature.hpp"

namespace diskbio {

enum class SpaceKind { P0, P1, P1_0 };

inline std::string to_string(SpaceKind s) {
    switch (s) {
        case SpaceKind::P0: return "P0";
        case SpaceKind::P1: return "P1";
        case SpaceKind::P1_0: return "P1_0";
    }
    return "?";
}

inline SpaceKind space_kind_from(const std::string& s) {
    if (s == "P0") return SpaceKind::P0;
    if (s == "P1") return SpaceKind::P1;
    if (s == "P1_0") return SpaceKind::P1_0;
    throw std::invalid_argument("unknown space kind: " + s);
}

/// Finite element space on a disk mesh. P1_0 keeps only interior vertices.
struct FunctionSpace {
    SpaceKind kind = SpaceKind::P0;
    const TriangleMesh* mesh = nullptr;
    std::vector<int> vertex_dof; // P1/P1_0: vertex -> dof (-1 if constrained)
    int dof_count = 0;

    FunctionSpace() = default;
    FunctionSpace(const TriangleMesh& m, SpaceKind k) : kind(k), mesh(&m) {
        if (k == SpaceKind::P0) {
            dof_count = m.num_triangles();
            return;
        }
        vertex_dof.assign(m.num_vertices(), -1);
        for (int v = 0; v < m.num_vertices(); ++v) {
            if (k == SpaceKind::P1_0 && m.boundary_vertex[v]) continue;
            vertex_dof[v] = dof_count++;
        }
        if (dof_count == 0) throw std::runtime_error("function space has no degrees of freedom");
    }

    // dof of local basis function `loc` on triangle `t`, or -1
    int dof(int t, int loc) const {
        if (kind == SpaceKind::P0) return loc == 0 ? t : -1;
        return vertex_dof[mesh->triangles[t][loc]];
    }

    int local_count() const { return kind == SpaceKind::P0 ? 1 : 3; }
};

struct GalerkinMatrix {
    std::string op; // V, W, Vbar, Wbar, mass, dual-weight
    SpaceKind trial = SpaceKind::P0;
    SpaceKind test = SpaceKind::P0;
    int level = 0;
    double a = 1.0;
    Eigen::MatrixXd entries;
};

/// Quadrature configuration for Galerkin assembly.
struct AssemblyConfig {
    int order_regular = 4;  // far pairs
    int order_singular = 5; // touching pairs
    int near_factor = 2;    // centroid distance below near_factor*(d1+d2) boosts the far rule
    int weighted_n_r = 128; // dual-weight rule resolution
    int weighted_n_theta = 256;
};

namespace detail {

struct PairClass {
    PairRelation relation = PairRelation::far;
    std::array<int, 3> perm_x{0, 1, 2};
    std::array<int, 3> perm_y{0, 1, 2};
};

// Classify a triangle pair by shared vertices and order both vertex lists so
// the shared ones come first in matching order (the chart convention the
// singular rules assume).
inline PairClass classify_pair(const std::array<int, 3>& tx, const std::array<int, 3>& ty) {
    PairClass pc;
    int shared = 0;
    std::array<bool, 3> used_x{}, used_y{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (tx[i] == ty[j] && !used_x[i] && !used_y[j]) {
                pc.perm_x[shared] = i;
                pc.perm_y[shared] = j;
                used_x[i] = used_y[j] = true;
                ++shared;
                break;
            }
    int kx = shared, ky = shared;
    for (int i = 0; i < 3; ++i) {
        if (!used_x[i]) pc.perm_x[kx++] = i;
        if (!used_y[i]) pc.perm_y[ky++] = i;
    }
    pc.relation = shared == 3   ? PairRelation::coincident
                  : shared == 2 ? PairRelation::edge
                  : shared == 1 ? PairRelation::vertex
                                : PairRelation::far;
    return pc;
}

struct PairRuleSet {
    QuadRule coincident, edge, vertex, far, near;

    explicit PairRuleSet(const AssemblyConfig& cfg)
        : coincident(singular_pair_quad(PairRelation::coincident, cfg.order_singular)),
          edge(singular_pair_quad(PairRelation::edge, cfg.order_singular)),
          vertex(singular_pair_quad(PairRelation::vertex, cfg.order_singular)),
          far(singular_pair_quad(PairRelation::far, std::min(8, cfg.order_regular))),
          near(singular_pair_quad(PairRelation::far, std::min(8, cfg.order_regular + 2))) {}

    const QuadRule& pick(PairRelation rel, bool near_field) const {
        switch (rel) {
            case PairRelation::coincident: return coincident;
            case PairRelation::edge: return edge;
            case PairRelation::vertex: return vertex;
            case PairRelation::far: return near_field ? near : far;
        }
        return far;
    }
};

} // namespace detail

/// Per-triangle surface curls of the P1 hat functions: curl phi_i = n x grad
/// phi_i, constant on each triangle; the three vectors sum to zero.
inline std::vector<std::array<Vec2, 3>> p1_surface_curl(const TriangleMesh& mesh) {
    std::vector<std::array<Vec2, 3>> curls(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        auto v = mesh.tri_vertices(t);
        double twoA = 2.0 * mesh.tri_area(t);
        if (twoA <= 0.0) throw std::runtime_error("degenerate triangle");
        // grad lambda_0 = rot90(V2 - V1)/(2A); curl = rot90(grad) = -(V2-V1)/(2A)
        curls[t][0] = (v[1] - v[2]) * (1.0 / twoA);
        curls[t][1] = (v[2] - v[0]) * (1.0 / twoA);
        curls[t][2] = (v[0] - v[1]) * (1.0 / twoA);
    }
    return curls;
}

namespace detail {

// Generic pair-quadrature driver: for every triangle pair evaluate
//   I(t_x, t_y; i, j) = sum_q w_q k(x_q, y_q) bx_i(q) by_j(q) Jx Jy
// and scatter through `emit`. Row-triangle blocks run in parallel; each worker
// writes only rows owned by its triangles, keeping runs bit-identical.
// WithBasis=false skips the 3x3 basis products and emits the plain pair
// integral, which P0 and curl-curl assembly distribute themselves.
template <bool WithBasis, typename Kernel, typename Emit>
void for_each_pair(const TriangleMesh& mesh, const AssemblyConfig& cfg, Kernel&& kern,
                   Emit&& emit) {
    const PairRuleSet rules(cfg);
    const int nt = mesh.num_triangles();
    std::vector<Vec2> centroid(nt);
    std::vector<double> diam(nt);
    for (int t = 0; t < nt; ++t) {
        centroid[t] = mesh.tri_centroid(t);
        auto v = mesh.tri_vertices(t);
        diam[t] = std::max({(v[0] - v[1]).norm(), (v[1] - v[2]).norm(), (v[2] - v[0]).norm()});
    }
    parallel_blocks(nt, [&](int b, int e) {
        for (int tx = b; tx < e; ++tx) {
            auto vx_all = mesh.tri_vertices(tx);
            double jx = 2.0 * mesh.tri_area(tx);
            for (int ty = 0; ty < nt; ++ty) {
                auto pc = classify_pair(mesh.triangles[tx], mesh.triangles[ty]);
                bool near_field =
                    pc.relation == PairRelation::far &&
                    (centroid[tx] - centroid[ty]).norm() < cfg.near_factor * (diam[tx] + diam[ty]);
                const QuadRule& rule = rules.pick(pc.relation, near_field);
                auto vy_all = mesh.tri_vertices(ty);
                std::array<Vec2, 3> vx{vx_all[pc.perm_x[0]], vx_all[pc.perm_x[1]],
                                       vx_all[pc.perm_x[2]]};
                std::array<Vec2, 3> vy{vy_all[pc.perm_y[0]], vy_all[pc.perm_y[1]],
                                       vy_all[pc.perm_y[2]]};
                double jy = 2.0 * mesh.tri_area(ty);
                if constexpr (WithBasis) {
                    double acc[3][3] = {};
                    for (size_t q = 0; q < rule.size(); ++q) {
                        const auto& nd = rule.nodes[q];
                        Vec2 x = simplex_chart(vx, nd[0], nd[1]);
                        Vec2 y = simplex_chart(vy, nd[2], nd[3]);
                        double k = kern(x, y) * rule.weights[q];
                        auto bx = simplex_bary(nd[0], nd[1]);
                        auto by = simplex_bary(nd[2], nd[3]);
                        for (int i = 0; i < 3; ++i)
                            for (int j = 0; j < 3; ++j) acc[i][j] += k * bx[i] * by[j];
                    }
                    double local[3][3];
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            local[pc.perm_x[i]][pc.perm_y[j]] = acc[i][j] * jx * jy;
                    emit(tx, ty, local);
                } else {
                    double acc = 0.0;
                    for (size_t q = 0; q < rule.size(); ++q) {
                        const auto& nd = rule.nodes[q];
                        Vec2 x = simplex_chart(vx, nd[0], nd[1]);
                        Vec2 y = simplex_chart(vy, nd[2], nd[3]);
                        acc += kern(x, y) * rule.weights[q];
                    }
                    emit(tx, ty, acc * jx * jy);
                }
            }
        }
    });
}

inline void symmetrize(Eigen::MatrixXd& m) {
    m = 0.5 * (m + m.transpose()).eval();
}

} // namespace detail

/// Galerkin matrix of a weakly singular kernel k(x,y) against the nodal basis
/// of `space` (P0 indicators or P1 hats).
template <typename Kernel>
GalerkinMatrix assemble_kernel_matrix(const TriangleMesh& mesh, const FunctionSpace& space,
                                      const AssemblyConfig& cfg, Kernel&& kern,
                                      const std::string& name) {
    GalerkinMatrix gm;
    gm.op = name;
    gm.trial = gm.test = space.kind;
    gm.level = mesh.level;
    gm.a = mesh.a;
    gm.entries = Eigen::MatrixXd::Zero(space.dof_count, space.dof_count);
    auto& A = gm.entries;
    if (space.kind == SpaceKind::P0) {
        detail::for_each_pair<false>(mesh, cfg, kern,
                                     [&](int tx, int ty, double value) { A(tx, ty) += value; });
    } else {
        detail::for_each_pair<true>(
            mesh, cfg, kern, [&](int tx, int ty, const double local[3][3]) {
                for (int i = 0; i < 3; ++i) {
                    int di = space.dof(tx, i);
                    if (di < 0) continue;
                    for (int j = 0; j < 3; ++j) {
                        int dj = space.dof(ty, j);
                        if (dj >= 0) A(di, dj) += local[i][j];
                    }
                }
            });
    }
    detail::symmetrize(A);
    return gm;
}

/// Weak single layer <V sigma, psi> = (1/4pi) int int sigma(x) psi(y)/|x-y|.
inline GalerkinMatrix assemble_single_layer(const TriangleMesh& mesh, SpaceKind space,
                                            const AssemblyConfig& cfg = {}) {
    if (space == SpaceKind::P1_0)
        throw std::invalid_argument("single layer assembles on P0 or P1");
    FunctionSpace fs(mesh, space);
    const double c = 1.0 / (4.0 * std::numbers::pi);
    return assemble_kernel_matrix(
        mesh, fs, cfg, [c](const Vec2& x, const Vec2& y) { return c / (x - y).norm(); }, "V");
}

/// Modified single layer with kernel (2/pi^2) S_a(x,y)/|x-y|; shares the
/// singular quadrature with V since S_a is bounded with S_a -> pi/2 on the
/// interior diagonal.
inline GalerkinMatrix assemble_mod_single_layer(const TriangleMesh& mesh, SpaceKind space,
                                                const AssemblyConfig& cfg = {}) {
    // P1_0 is the restriction used when Vbar preconditions W
    FunctionSpace fs(mesh, space);
    const double a = mesh.a;
    const double c = 2.0 / (std::numbers::pi * std::numbers::pi);
    auto kern = [a, c](const Vec2& x, const Vec2& y) {
        double d = (x - y).norm();
        double wx = omega(a, x.norm()), wy = omega(a, y.norm());
        return c * std::atan(wx * wy / (a * d)) / d;
    };
    return assemble_kernel_matrix(mesh, fs, cfg, kern, "Vbar");
}

namespace detail {

// curl-curl bilinear form: pair scalar integral of `kern` distributed through
// the constant per-triangle curls of the P1 hats.
template <typename Kernel>
GalerkinMatrix assemble_curl_curl(const TriangleMesh& mesh, const FunctionSpace& space,
                                  const AssemblyConfig& cfg, Kernel&& kern,
                                  const std::string& name) {
    GalerkinMatrix gm;
    gm.op = name;
    gm.trial = gm.test = space.kind;
    gm.level = mesh.level;
    gm.a = mesh.a;
    gm.entries = Eigen::MatrixXd::Zero(space.dof_count, space.dof_count);
    auto curls = p1_surface_curl(mesh);
    auto& A = gm.entries;
    detail::for_each_pair<false>(mesh, cfg, kern, [&](int tx, int ty, double value) {
        for (int i = 0; i < 3; ++i) {
            int di = space.dof(tx, i);
            if (di < 0) continue;
            for (int j = 0; j < 3; ++j) {
                int dj = space.dof(ty, j);
                if (dj >= 0) A(di, dj) += value * curls[tx][i].dot(curls[ty][j]);
            }
        }
    });
    detail::symmetrize(A);
    return gm;
}

} // namespace detail

/// Hypersingular form in its integrated-by-parts shape
/// (1/4pi) int int curl u(y) . curl v(x) / |x-y| on P1_0.
inline GalerkinMatrix assemble_hypersingular(const TriangleMesh& mesh,
                                             const AssemblyConfig& cfg = {}) {
    FunctionSpace fs(mesh, SpaceKind::P1_0);
    const double c = 1.0 / (4.0 * std::numbers::pi);
    return detail::assemble_curl_curl(
        mesh, fs, cfg, [c](const Vec2& x, const Vec2& y) { return c / (x - y).norm(); }, "W");
}

/// Dual-weight vector q_i = int phi_i omega_a^{-1} dD, evaluated with the
/// global weighted disk rule; nodes in the circle-polygon gap are clamped to
/// the nearest triangle, which keeps the partition of unity exact.
inline Eigen::VectorXd dual_weight_vector(const TriangleMesh& mesh, const FunctionSpace& space,
                                          const AssemblyConfig& cfg = {}) {
    QuadRule rule = weighted_disk_quad(mesh.a, cfg.weighted_n_r, cfg.weighted_n_theta);
    PointLocator locator(mesh);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(space.dof_count);
    for (size_t n = 0; n < rule.size(); ++n) {
        Vec2 p{rule.nodes[n][0], rule.nodes[n][1]};
        auto hit = locator.locate_clamped(p);
        if (space.kind == SpaceKind::P0) {
            q(hit.triangle) += rule.weights[n];
        } else {
            for (int i = 0; i < 3; ++i) {
                int d = space.dof(hit.triangle, i);
                if (d >= 0) q(d) += rule.weights[n] * hit.bary[i];
            }
        }
    }
    return q;
}

/// Regularized modified hypersingular form on the full P1 space:
///   (2/pi^2) int int (S_a/|x-y|) curl u . curl v  +  (2/(a pi^2)) q q^T
/// with q the dual-weight vector; SPD including the constants.
inline GalerkinMatrix assemble_mod_hypersingular(const TriangleMesh& mesh,
                                                 const AssemblyConfig& cfg = {}) {
    FunctionSpace fs(mesh, SpaceKind::P1);
    const double a = mesh.a;
    const double c = 2.0 / (std::numbers::pi * std::numbers::pi);
    auto kern = [a, c](const Vec2& x, const Vec2& y) {
        double d = (x - y).norm();
        double wx = omega(a, x.norm()), wy = omega(a, y.norm());
        return c * std::atan(wx * wy / (a * d)) / d;
    };
    GalerkinMatrix gm = detail::assemble_curl_curl(mesh, fs, cfg, kern, "Wbar");
    Eigen::VectorXd q = dual_weight_vector(mesh, fs, cfg);
    gm.entries += (c / a) * q * q.transpose();
    return gm;
}

/// Mass matrix int phi_i psi_j dD with exact per-triangle formulas.
inline GalerkinMatrix assemble_mass(const TriangleMesh& mesh, SpaceKind row_space,
                                    SpaceKind col_space) {
    FunctionSpace rows(mesh, row_space), cols(mesh, col_space);
    GalerkinMatrix gm;
    gm.op = "mass";
    gm.trial = col_space;
    gm.test = row_space;
    gm.level = mesh.level;
    gm.a = mesh.a;
    gm.entries = Eigen::MatrixXd::Zero(rows.dof_count, cols.dof_count);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        double area = mesh.tri_area(t);
        for (int i = 0; i < rows.local_count(); ++i) {
            int di = rows.dof(t, i);
            if (di < 0) continue;
            for (int j = 0; j < cols.local_count(); ++j) {
                int dj = cols.dof(t, j);
                if (dj < 0) continue;
                double v;
                bool ri = rows.kind != SpaceKind::P0, cj = cols.kind != SpaceKind::P0;
                if (!ri && !cj) v = area;
                else if (ri != cj) v = area / 3.0;
                else v = (i == j) ? area / 6.0 : area / 12.0;
                gm.entries(di, dj) += v;
            }
        }
    }
    return gm;
}

} // namespace diskbio
