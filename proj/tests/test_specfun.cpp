#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "diskbio/specfun.hpp"
#include "oracles.hpp"

using namespace diskbio;
using Catch::Approx;
using std::numbers::pi;

TEST_CASE("lambda closed-form values") {
    CHECK(lambda({0, 0}) == Approx(pi).epsilon(1e-14));
    CHECK(lambda({1, 0}) == Approx(4.0 / pi).epsilon(1e-14));
    CHECK(lambda({1, 1}) == Approx(pi / 2.0).epsilon(1e-14));
    CHECK(lambda({2, 0}) == Approx(pi / 4.0).epsilon(1e-14));
    CHECK(lambda({2, 1}) == Approx(8.0 / (3.0 * pi)).epsilon(1e-14));
    CHECK(lambda({4, 0}) == Approx(9.0 * pi / 64.0).epsilon(1e-14));
    CHECK_THROWS_AS(ModeIndex(1, 2), std::domain_error);
}

TEST_CASE("lambda against the direct Gamma oracle") {
    for (int l = 0; l <= 20; ++l)
        for (int m = 0; m <= l; ++m)
            CHECK(lambda({l, m}) == Approx(oracles::lambda_gamma_direct(l, m)).epsilon(1e-12));
}

TEST_CASE("lambda symmetric in m and stable at large degree") {
    for (int l = 0; l <= 50; ++l)
        for (int m = 0; m <= l; ++m) CHECK(lambda({l, m}) == lambda({l, -m}));
    double big = lambda({10000, 5000});
    CHECK(std::isfinite(big));
    CHECK(big > 0.0);
}

TEST_CASE("Gamma recursion residual") {
    // hand value at (1,0): 4/lambda = pi = 1/2 (2 pi/2 + 2 pi/2)
    CHECK(std::abs(lambda_recursion_residual({1, 0})) < 1e-14);
    CHECK(std::abs(lambda_recursion_residual({2, 0})) < 1e-12);
    CHECK_THROWS_AS(lambda_recursion_residual({0, 0}), std::domain_error);
    for (int l = 1; l <= 200; ++l)
        for (int m = -l; m <= l; ++m) {
            double rel = std::abs(lambda_recursion_residual({l, m})) / (4.0 / lambda({l, m}));
            REQUIRE(rel <= 1e-12);
        }
}

TEST_CASE("associated Legendre values and conventions") {
    CHECK(assoc_legendre(0, 0, 0.3) == 1.0);
    CHECK(assoc_legendre(0, 0, -0.9) == 1.0);
    CHECK(assoc_legendre(1, 0, 0.5) == Approx(0.5));
    CHECK(assoc_legendre(2, 1, 0.6) == Approx(-3.0 * 0.6 * std::sqrt(1.0 - 0.36)));
    // P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m
    double t = 0.37;
    CHECK(assoc_legendre(3, -2, t) ==
          Approx(assoc_legendre(3, 2, t) / 120.0).epsilon(1e-13));
    CHECK_THROWS_AS(assoc_legendre(1, 2, 0.5), std::domain_error);
    CHECK_THROWS_AS(assoc_legendre(2, 0, 1.5), std::domain_error);
}

TEST_CASE("PSH values and conjugation") {
    PolarPoint any(0.37, 1.1);
    CHECK(psh({0, 0}, any).real() == Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-14));
    CHECK(psh({0, 0}, any).imag() == 0.0);
    CHECK(psh({1, 0}, PolarPoint(0.0, 0.0)).real() == Approx(std::sqrt(3.0 / (4.0 * pi))));

    // y_1^0 / omega constant in x (odd-parity factorization)
    Complex a = psh_over_omega({1, 0}, PolarPoint(0.2, 0.4));
    Complex b = psh_over_omega({1, 0}, PolarPoint(0.85, 2.9));
    CHECK(std::abs(a - b) < 1e-13);
    CHECK(a.real() == Approx(std::sqrt(3.0 / (4.0 * pi))));

    // y_l^{-m} = (-1)^m conj(y_l^m)
    for (int l = 1; l <= 5; ++l)
        for (int m = 1; m <= l; ++m) {
            Complex plus = psh({l, m}, any);
            Complex minus = psh({l, -m}, any);
            CHECK(std::abs(minus - (m % 2 ? -1.0 : 1.0) * std::conj(plus)) < 1e-13);
        }
    CHECK_THROWS_AS(psh({1, 0}, PolarPoint(1.2, 0.0)), std::domain_error);
}

TEST_CASE("normalized radial part matches gamma * assoc_legendre at small degree") {
    for (int l = 0; l <= 8; ++l)
        for (int m = 0; m <= l; ++m) {
            double fact = 1.0;
            for (int j = l - m + 1; j <= l + m; ++j) fact *= j;
            double gamma = (m % 2 ? -1.0 : 1.0) * std::sqrt((2 * l + 1) / (4.0 * pi) / fact);
            for (double t : {0.0, 0.31, 0.77, 1.0}) {
                CHECK(detail::psh_radial(l, m, t) ==
                      Approx(gamma * assoc_legendre(l, m, t)).margin(1e-13));
            }
        }
}

TEST_CASE("odd-parity PSH over omega extends continuously to the rim") {
    for (auto [l, m] : {std::pair{1, 0}, {2, 1}, {3, 0}, {4, 3}}) {
        double th = 0.83;
        Complex inner = psh_over_omega({l, m}, PolarPoint(1.0 - 1e-3, th));
        Complex outer = psh_over_omega({l, m}, PolarPoint(1.0 - 1e-6, th));
        CHECK(std::abs(outer - inner) < 5e-3 * std::max(1.0, std::abs(inner)));
    }
}

TEST_CASE("Poisson kernel closed form and series") {
    CHECK(poisson_kernel(0.0, 2.2) == Approx(1.0 / (2.0 * pi)));
    CHECK(poisson_kernel(0.5, 0.0) == Approx(3.0 / (2.0 * pi)));
    CHECK_THROWS_AS(poisson_kernel(1.0, 0.0), std::domain_error);
    for (int N : {5, 20, 60}) {
        double tail = 2.0 * std::pow(0.9, N + 1) / (2.0 * pi * (1.0 - 0.9));
        CHECK(std::abs(poisson_kernel_series(0.9, 1.0, N) - poisson_kernel(0.9, 1.0)) <= tail);
    }
}

TEST_CASE("kinetic moments: ladder endpoints and hand values") {
    PolarPoint x(0.3, 1.0);
    for (int l = 0; l <= 4; ++l)
        CHECK(std::abs(kinetic_psh({l, l}, KineticSign::plus, x)) == 0.0);

    Complex lm = kinetic_psh({1, 1}, KineticSign::minus, PolarPoint(0.0, 0.0));
    CHECK(lm.real() == Approx(std::sqrt(2.0) * std::sqrt(3.0 / (4.0 * pi))));
    CHECK(std::abs(lm.imag()) < 1e-15);
    CHECK_THROWS_AS(kinetic_psh({1, 0}, KineticSign::plus, PolarPoint(1.0, 0.0)),
                    std::domain_error);
}

TEST_CASE("kinetic finite differences") {
    auto constant = [](const PolarPoint&) { return Complex(3.7, -0.2); };
    CHECK(std::abs(kinetic_fd(constant, KineticSign::plus, PolarPoint(0.5, 0.3), 1e-5)) < 1e-8);

    // f = r e^{i theta}: L- f = -2
    auto f = [](const PolarPoint& p) { return p.r * std::exp(Complex(0, p.theta)); };
    Complex v = kinetic_fd(f, KineticSign::minus, PolarPoint(0.4, 0.9), 1e-4);
    CHECK(std::abs(v - Complex(-2.0, 0.0)) < 1e-8);

    CHECK_THROWS_AS(kinetic_fd(f, KineticSign::plus, PolarPoint(1e-6, 0.0), 1e-4),
                    std::domain_error);
}

TEST_CASE("kinetic analytic vs finite-difference cross-oracle") {
    for (int l = 1; l <= 4; ++l)
        for (int m = -l; m <= l; ++m)
            for (double r : {0.1, 0.3, 0.8}) {
                PolarPoint x(r, 1.0);
                auto f = [&](const PolarPoint& p) { return psh(ModeIndex(l, m), p); };
                for (auto sign : {KineticSign::plus, KineticSign::minus}) {
                    Complex exact = kinetic_psh({l, m}, sign, x);
                    Complex fd = kinetic_fd(f, sign, x, 1e-5);
                    double scale = std::max(1.0, std::abs(exact));
                    CHECK(std::abs(exact - fd) / scale < 1e-5);
                }
            }
    // pinned cross-check from the module contract
    PolarPoint x(0.4, 0.7);
    auto f = [](const PolarPoint& p) { return psh(ModeIndex(2, 1), p); };
    CHECK(std::abs(kinetic_psh({2, 1}, KineticSign::plus, x) -
                   kinetic_fd(f, KineticSign::plus, x, 1e-5)) < 1e-6);
}
