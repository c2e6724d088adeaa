#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diskbio/assembly.hpp"
#include "diskbio/solve.hpp"

namespace diskbio {

enum class OperatorPair { V_Wbar, W_Vbar };

inline std::string to_string(OperatorPair p) {
    return p == OperatorPair::V_Wbar ? "VWbar" : "WVbar";
}

struct PrecondStudyRow {
    int level = 0;
    int dofs = 0;
    double h = 0.0;
    double kappa_raw = 0.0;
    double kappa_pre = 0.0;
    int iters_raw = 0;
    int iters_pre = 0;
};

/// Load vector <g, phi_i> with a regular triangle rule.
inline Eigen::VectorXd load_vector(const TriangleMesh& mesh, const FunctionSpace& space,
                                   const std::function<double(const Vec2&)>& g, int order = 4) {
    QuadRule rule = triangle_quad(order);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.dof_count);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        auto v = mesh.tri_vertices(t);
        double jac = 2.0 * mesh.tri_area(t);
        for (size_t q = 0; q < rule.size(); ++q) {
            Vec2 x = simplex_chart(v, rule.nodes[q][0], rule.nodes[q][1]);
            double w = rule.weights[q] * jac * g(x);
            auto bary = simplex_bary(rule.nodes[q][0], rule.nodes[q][1]);
            if (space.kind == SpaceKind::P0) {
                b(t) += w;
            } else {
                for (int i = 0; i < 3; ++i) {
                    int d = space.dof(t, i);
                    if (d >= 0) b(d) += w * bary[i];
                }
            }
        }
    }
    return b;
}

/// Operator-preconditioning study over refinement levels: assemble the
/// operator and its Calderon partner on matching nodal spaces, estimate raw
/// and preconditioned condition numbers, and run CG both ways on the load of
/// `rhs`.
inline std::vector<PrecondStudyRow> precond_study(const std::vector<int>& levels,
                                                  OperatorPair pair,
                                                  const std::function<double(const Vec2&)>& rhs,
                                                  double a = 1.0, const AssemblyConfig& cfg = {},
                                                  double cg_tol = 1e-8) {
    std::vector<PrecondStudyRow> rows;
    for (int level : levels) {
        TriangleMesh mesh = mesh_disk(a, level);
        GalerkinMatrix A, B, M;
        if (pair == OperatorPair::V_Wbar) {
            A = assemble_single_layer(mesh, SpaceKind::P1, cfg);
            B = assemble_mod_hypersingular(mesh, cfg);
            M = assemble_mass(mesh, SpaceKind::P1, SpaceKind::P1);
        } else {
            A = assemble_hypersingular(mesh, cfg);
            B = assemble_mod_single_layer(mesh, SpaceKind::P1_0, cfg);
            M = assemble_mass(mesh, SpaceKind::P1_0, SpaceKind::P1_0);
        }
        FunctionSpace space(mesh, A.trial);

        PrecondStudyRow row;
        row.level = level;
        row.dofs = int(A.entries.rows());
        row.h = mesh.max_edge_length();
        row.kappa_raw = spd_condition(A.entries).kappa;
        row.kappa_pre = preconditioned_spectrum(A.entries, B.entries, M.entries).kappa;

        Eigen::VectorXd b = load_vector(mesh, space, rhs, cfg.order_regular);
        int maxit = 40 * row.dofs;
        row.iters_raw = cg(A.entries, b, cg_tol, maxit).iterations;
        Eigen::LLT<Eigen::MatrixXd> lltM(M.entries);
        if (lltM.info() != Eigen::Success) throw std::runtime_error("mass matrix not SPD");
        ApplyFn precond = [&](const Eigen::VectorXd& r) {
            return Eigen::VectorXd(lltM.solve(B.entries * lltM.solve(r)));
        };
        row.iters_pre = cg(A.entries, b, cg_tol, maxit, precond).iterations;
        rows.push_back(row);
    }
    return rows;
}

/// Cosine similarity between a P0 coefficient vector and the centroid
/// interpolant of omega_a^{-1}; the density solving V sigma = 1 concentrates
/// like omega^{-1} toward the rim.
inline double omega_profile_similarity(const TriangleMesh& mesh, const Eigen::VectorXd& sigma) {
    if (sigma.size() != mesh.num_triangles())
        throw std::invalid_argument("omega_profile_similarity expects P0 coefficients");
    Eigen::VectorXd w(mesh.num_triangles());
    for (int t = 0; t < mesh.num_triangles(); ++t)
        w(t) = 1.0 / omega(mesh.a, mesh.tri_centroid(t).norm());
    return sigma.dot(w) / (sigma.norm() * w.norm());
}

} // namespace diskbio
