#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <random>

#include "diskbio/precond.hpp"
#include "diskbio/solve.hpp"

using namespace diskbio;
using Catch::Approx;

TEST_CASE("cg: identity, diagonal, exact preconditioner") {
    Eigen::VectorXd b = Eigen::VectorXd::Ones(30);
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(30, 30);
    auto r1 = cg(eye, b, 1e-12, 100);
    CHECK(r1.iterations == 1);
    CHECK(r1.converged);

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(100, 100);
    for (int i = 0; i < 100; ++i) D(i, i) = i + 1.0;
    auto r2 = cg(D, Eigen::VectorXd::Ones(100), 1e-10, 200);
    CHECK(r2.converged);
    CHECK(r2.iterations <= 100); // finite termination bound

    ApplyFn inv = [&D](const Eigen::VectorXd& v) {
        Eigen::VectorXd z = v;
        for (int i = 0; i < 100; ++i) z(i) /= D(i, i);
        return z;
    };
    auto r3 = cg(D, Eigen::VectorXd::Ones(100), 1e-12, 200, inv);
    CHECK(r3.iterations == 1);
}

TEST_CASE("cg: A-norm error decreases monotonically") {
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    int n = 40;
    Eigen::MatrixXd R(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) R(i, j) = nd(rng);
    Eigen::MatrixXd A = R * R.transpose() + 0.1 * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = nd(rng);
    Eigen::VectorXd exact = A.llt().solve(b);

    // rerun CG capped at increasing iteration counts and track the A-norm error
    double prev = 1e300;
    for (int k = 1; k <= 25; ++k) {
        auto r = cg(A, b, 0.0, k);
        Eigen::VectorXd e = r.x - exact;
        double anorm = e.dot(A * e);
        CHECK(anorm <= prev * (1.0 + 1e-14));
        prev = anorm;
    }
}

TEST_CASE("cg: rejects indefinite operators") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(5, 5);
    A(3, 3) = -1.0;
    CHECK_THROWS_AS(cg(A, Eigen::VectorXd::Ones(5), 1e-10, 50), std::runtime_error);
}

TEST_CASE("lanczos extremes: trivial pencils") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(25, 25);
    auto r = lanczos_extremes(I, I, 50);
    CHECK(r.lambda_min == Approx(1.0).epsilon(1e-12));
    CHECK(r.lambda_max == Approx(1.0).epsilon(1e-12));
    CHECK(r.kappa == Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 10.0;
    auto r2 = lanczos_extremes(A, Eigen::MatrixXd::Identity(2, 2), 10);
    CHECK(r2.lambda_min == Approx(1.0).epsilon(1e-12));
    CHECK(r2.lambda_max == Approx(10.0).epsilon(1e-12));
    CHECK(r2.kappa == Approx(10.0).epsilon(1e-11));
}

TEST_CASE("lanczos extremes vs dense generalized eigensolver") {
    std::mt19937 rng(11);
    std::normal_distribution<double> nd;
    int n = 200;
    Eigen::MatrixXd R1(n, n), R2(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            R1(i, j) = nd(rng);
            R2(i, j) = nd(rng);
        }
    Eigen::MatrixXd A = R1 * R1.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd B = R2 * R2.transpose() + n * Eigen::MatrixXd::Identity(n, n);

    auto lanczos = lanczos_extremes(A, B, n, 1e-14);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(A, B);
    double dmin = dense.eigenvalues()(0), dmax = dense.eigenvalues()(n - 1);
    CHECK(lanczos.lambda_min == Approx(dmin).epsilon(1e-8));
    CHECK(lanczos.lambda_max == Approx(dmax).epsilon(1e-8));
    // bracketing: dense extremes lie inside the Ritz interval up to the tolerance
    CHECK(lanczos.lambda_min <= dmin * (1.0 + 1e-8));
    CHECK(lanczos.lambda_max >= dmax * (1.0 - 1e-8));

    CHECK_THROWS_AS(lanczos_extremes(-A, B, 50), std::runtime_error);
}

TEST_CASE("preconditioning sanity on a small study") {
    auto rows = precond_study({1, 2}, OperatorPair::V_Wbar, [](const Vec2&) { return 1.0; });
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.kappa_pre <= r.kappa_raw);
        CHECK(r.iters_pre >= 1);
        CHECK(r.iters_raw >= r.iters_pre);
        CHECK(r.h > 0.0);
    }
    // raw conditioning grows with refinement
    CHECK(rows[1].kappa_raw > rows[0].kappa_raw);
}

TEST_CASE("omega profile similarity of the V sigma = 1 solution") {
    TriangleMesh mesh = mesh_disk(1.0, 3);
    GalerkinMatrix V = assemble_single_layer(mesh, SpaceKind::P0);
    FunctionSpace p0(mesh, SpaceKind::P0);
    Eigen::VectorXd b = load_vector(mesh, p0, [](const Vec2&) { return 1.0; });
    auto sol = cg(V.entries, b, 1e-10, 10000);
    REQUIRE(sol.converged);
    CHECK(omega_profile_similarity(mesh, sol.x) > 0.9);
}
