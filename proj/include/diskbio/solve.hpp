#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace diskbio {

using ApplyFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct CgResult {
    Eigen::VectorXd x;
    int iterations = 0;
    std::vector<double> residuals; // relative residual history
    bool converged = false;
};

/// Preconditioned conjugate gradients for SPD A. `precond` applies an SPD
/// approximation of A^{-1}. Breakdown on negative curvature signals a
/// non-SPD operator.
inline CgResult cg(const ApplyFn& A, const Eigen::VectorXd& b, double tol, int maxit,
                   const std::optional<ApplyFn>& precond = std::nullopt) {
    CgResult res;
    const int n = int(b.size());
    res.x = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = b;
    double bnorm = b.norm();
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    Eigen::VectorXd z = precond ? (*precond)(r) : r;
    Eigen::VectorXd p = z;
    double rz = r.dot(z);
    res.residuals.push_back(1.0);
    for (int it = 0; it < maxit; ++it) {
        Eigen::VectorXd Ap = A(p);
        double pAp = p.dot(Ap);
        if (pAp <= 0.0) throw std::runtime_error("cg: negative curvature, operator not SPD");
        double alpha = rz / pAp;
        res.x += alpha * p;
        r -= alpha * Ap;
        res.iterations = it + 1;
        double rel = r.norm() / bnorm;
        res.residuals.push_back(rel);
        if (rel <= tol) {
            res.converged = true;
            return res;
        }
        z = precond ? (*precond)(r) : r;
        double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    return res;
}

inline CgResult cg(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol, int maxit,
                   const std::optional<ApplyFn>& precond = std::nullopt) {
    return cg([&A](const Eigen::VectorXd& v) { return Eigen::VectorXd(A * v); }, b, tol, maxit,
              precond);
}

struct SpectrumReport {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double kappa = 1.0;
    int lanczos_steps = 0;
    double residual_tol = 0.0;
};

/// Extreme eigenvalues of the SPD pencil A v = lambda B v by Lanczos in the
/// B-inner product with full reorthogonalization (small problems, so ghost
/// modes are not tolerated). Needs A v, B v and B^{-1} v applications.
inline SpectrumReport lanczos_extremes(const ApplyFn& applyA, const ApplyFn& applyB,
                                       const ApplyFn& solveB, int n, int steps,
                                       double tol = 1e-10) {
    steps = std::min(steps, n);
    std::vector<Eigen::VectorXd> q; // B-orthonormal basis
    std::vector<Eigen::VectorXd> z; // z_i = B q_i
    std::vector<double> alpha, beta;

    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    for (int i = 0; i < n; ++i) v(i) += 1e-3 * std::sin(7.0 * (i + 1)); // deterministic start
    Eigen::VectorXd Bv = applyB(v);
    double bnorm = std::sqrt(v.dot(Bv));
    if (!(bnorm > 0.0)) throw std::runtime_error("lanczos: B not positive definite");
    q.push_back(v / bnorm);
    z.push_back(Bv / bnorm);

    SpectrumReport rep;
    rep.residual_tol = tol;
    double prev_min = 0.0, prev_max = 0.0;
    for (int j = 0; j < steps; ++j) {
        Eigen::VectorXd w = solveB(applyA(q[j]));
        double a = w.dot(z[j]);
        alpha.push_back(a);
        w -= a * q[j];
        if (j > 0) w -= beta[j - 1] * q[j - 1];
        // full reorthogonalization against the B-inner product
        for (int pass = 0; pass < 2; ++pass)
            for (size_t i = 0; i < q.size(); ++i) w -= w.dot(z[i]) * q[i];
        Eigen::VectorXd Bw = applyB(w);
        double wnorm2 = w.dot(Bw);
        rep.lanczos_steps = j + 1;

        // Ritz extremes of the tridiagonal section
        int m = int(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        rep.lambda_min = es.eigenvalues()(0);
        rep.lambda_max = es.eigenvalues()(m - 1);
        if (wnorm2 <= 0.0 || m == n) break;
        double converge = std::abs(rep.lambda_min - prev_min) +
                          std::abs(rep.lambda_max - prev_max);
        if (j > 3 && converge <= tol * std::abs(rep.lambda_max)) break;
        prev_min = rep.lambda_min;
        prev_max = rep.lambda_max;
        double bnext = std::sqrt(wnorm2);
        beta.push_back(bnext);
        q.push_back(w / bnext);
        z.push_back(Bw / bnext);
    }
    if (!(rep.lambda_min > 0.0))
        throw std::runtime_error("lanczos: pencil not positive definite");
    rep.kappa = rep.lambda_max / rep.lambda_min;
    return rep;
}

inline SpectrumReport lanczos_extremes(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       int steps, double tol = 1e-10) {
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success) throw std::runtime_error("lanczos: B not SPD");
    return lanczos_extremes([&A](const Eigen::VectorXd& v) { return Eigen::VectorXd(A * v); },
                            [&B](const Eigen::VectorXd& v) { return Eigen::VectorXd(B * v); },
                            [&llt](const Eigen::VectorXd& v) { return Eigen::VectorXd(llt.solve(v)); },
                            int(A.rows()), steps, tol);
}

/// Condition number of an SPD matrix (pencil against the identity).
inline SpectrumReport spd_condition(const Eigen::MatrixXd& A, int steps = 200) {
    auto id = [](const Eigen::VectorXd& v) { return v; };
    return lanczos_extremes([&A](const Eigen::VectorXd& v) { return Eigen::VectorXd(A * v); }, id,
                            id, int(A.rows()), steps);
}

/// Extreme eigenvalues of the preconditioned operator P A with
/// P = M^{-1} B M^{-1}: the pencil A v = lambda P^{-1} v, so Lanczos only
/// needs Cholesky factors of M and B.
inline SpectrumReport preconditioned_spectrum(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                              const Eigen::MatrixXd& M, int steps = 200,
                                              double tol = 1e-10) {
    Eigen::LLT<Eigen::MatrixXd> lltB(B), lltM(M);
    if (lltB.info() != Eigen::Success || lltM.info() != Eigen::Success)
        throw std::runtime_error("preconditioned_spectrum: inputs not SPD");
    auto applyA = [&A](const Eigen::VectorXd& v) { return Eigen::VectorXd(A * v); };
    auto applyBinvPencil = [&](const Eigen::VectorXd& v) { // B-side of pencil = M B^{-1} M
        return Eigen::VectorXd(M * lltB.solve(M * v));
    };
    auto solveBinvPencil = [&](const Eigen::VectorXd& v) { // (M B^{-1} M)^{-1} = M^{-1} B M^{-1}
        return Eigen::VectorXd(lltM.solve(B * lltM.solve(v)));
    };
    return lanczos_extremes(applyA, applyBinvPencil, solveBinvPencil, int(A.rows()), steps, tol);
}

} // namespace diskbio
