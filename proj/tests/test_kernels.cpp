#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "diskbio/kernels.hpp"

using namespace diskbio;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("cut-off S_a limits and hand value") {
    PolarPoint x(0.3, 0.7);
    CHECK(s_fun(1.0, x, x) == Approx(pi / 2));
    CHECK(s_fun(1.0, PolarPoint(1.0, 0.2), PolarPoint(0.5, 1.0)) == 0.0);
    CHECK(s_fun(1.0, PolarPoint(0.0, 0.0), PolarPoint(1.0 / std::sqrt(2.0), 0.0)) ==
          Approx(pi / 4).epsilon(1e-12));
    CHECK_THROWS_AS(s_fun(1.0, PolarPoint(1.5, 0.0), x), std::domain_error);
}

TEST_CASE("cut-off scale invariance") {
    PolarPoint xp(0.4, 0.3), yp(0.8, 2.0);
    double ref = s_fun(1.0, xp, yp);
    for (double a : {0.5, 2.0, 10.0}) {
        PolarPoint xa(a * xp.r, xp.theta), ya(a * yp.r, yp.theta);
        CHECK(s_fun(a, xa, ya) == Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("kernel pointwise values, symmetry, positivity") {
    KernelConfig cfg;
    PolarPoint x(0.25, 0.0), y(0.25, pi); // distance 0.5
    CHECK(kernel_eval(OperatorKind::V, cfg, x, y) == Approx(1.0 / (2.0 * pi)));

    // Vbar approaches (1/pi)/|x-y|, i.e. 4/pi times the V kernel, on the diagonal
    PolarPoint x0(0.3, 0.4);
    for (double eps : {1e-3, 1e-5}) {
        PolarPoint y0(x0.r + eps, x0.theta);
        double d = distance(x0, y0);
        CHECK(d * kernel_eval(OperatorKind::Vbar, cfg, x0, y0) == Approx(1.0 / pi).epsilon(5e-3));
    }

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ur(0.0, 0.95), ut(0.0, 2 * pi);
    for (int k = 0; k < 1000; ++k) {
        PolarPoint a(ur(rng), ut(rng)), b(ur(rng), ut(rng));
        if (distance(a, b) < 1e-6) continue;
        for (auto kind :
             {OperatorKind::V, OperatorKind::W, OperatorKind::Vbar, OperatorKind::Wbar}) {
            double kab = kernel_eval(kind, cfg, a, b);
            double kba = kernel_eval(kind, cfg, b, a);
            REQUIRE(kab == kba); // formulas are symmetric term by term
            REQUIRE(kab > 0.0);
        }
    }

    CHECK_THROWS_AS(kernel_eval(OperatorKind::V, cfg, x, x), std::domain_error);
    CHECK_THROWS_AS(kernel_eval(OperatorKind::Wbar, cfg, PolarPoint(1.0, 0.0), y),
                    std::domain_error);
}

TEST_CASE("kernel series symmetry and parity structure") {
    PolarPoint x(0.2, 0.3), y(0.55, 2.0);
    for (auto kind : {OperatorKind::V, OperatorKind::W, OperatorKind::Vbar, OperatorKind::Wbar}) {
        double xy = kernel_series(kind, x, y, 40, 0.9);
        double yx = kernel_series(kind, y, x, 40, 0.9);
        CHECK(xy == Approx(yx).margin(1e-15));
    }
}

TEST_CASE("Abel-extrapolated series match the closed kernels") {
    KernelConfig cfg;
    const std::pair<PolarPoint, PolarPoint> pairs[] = {
        {{0.2, 0.0}, {0.6, pi / 2}},
        {{0.0, 0.0}, {0.55, 1.0}},
        {{0.3, 1.0}, {0.5, 3.5}},
        {{0.45, 2.0}, {0.4, 4.5}},
        {{0.5, 0.0}, {0.5, pi}},
    };
    for (const auto& [x, y] : pairs) {
        double sV = kernel_series_extrapolated(OperatorKind::V, x, y);
        double cV = kernel_eval(OperatorKind::V, cfg, x, y);
        CHECK(std::abs(sV - cV) / cV < 1e-3);
        double sVb = kernel_series_extrapolated(OperatorKind::Vbar, x, y);
        double cVb = kernel_eval(OperatorKind::Vbar, cfg, x, y);
        CHECK(std::abs(sVb - cVb) / cVb < 1e-3);
    }
}

TEST_CASE("Li-Rong representation at alpha = 1") {
    PolarPoint x(0.3, 0.0), y(0.5, 1.0);
    double ref = 1.0 / (4.0 * pi * distance(x, y));
    CHECK(std::abs(li_rong_alpha1(x, y) - ref) / ref < 1e-6);

    // r_x = 0 collapses to the hand integral 1/(4 pi r_y)
    PolarPoint o(0.0, 0.0), y2(0.47, 2.2);
    CHECK(li_rong_alpha1(o, y2) == Approx(1.0 / (4.0 * pi * 0.47)).epsilon(1e-9));

    // symmetry under swapping the points
    CHECK(li_rong_alpha1(x, y) == Approx(li_rong_alpha1(y, x)).epsilon(1e-9));
}

TEST_CASE("arctan primitive residual vanishes") {
    CHECK(std::abs(primitive_check_vbar(1.0, PolarPoint(0.2, 0.0), PolarPoint(0.4, 2.0))) < 1e-6);

    // equal radii put both square-root singularities at the lower endpoint
    CHECK(std::abs(primitive_check_vbar(1.0, PolarPoint(0.5, 0.3), PolarPoint(0.5, 1.3))) < 1e-5);

    // a -> infinity limit: the truncated integral approaches pi times the
    // Li-Rong value of the full half-line representation
    PolarPoint x(0.25, 0.4), y(0.5, 2.0);
    double finite_part = detail::lirong_radial_integral(x, y, 1e4, 1e-10);
    CHECK(finite_part == Approx(pi * li_rong_alpha1(x, y)).epsilon(1e-4));
}
