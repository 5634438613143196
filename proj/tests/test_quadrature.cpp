#include <doctest.h>

#include <cmath>

#include "v2vsf/quadrature.hpp"
#include "oracles.hpp"

using namespace v2vsf;

TEST_CASE("polynomial and transcendental integrals") {
    CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quad::integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("breakpoint splitting handles a discontinuous integrand") {
    const auto step = [](double x) { return x < 1.0 ? 1.0 : 0.25; };
    const double split[] = {1.0};
    const double v = quad::integrate(step, 0.0, 2.0, split);
    CHECK(v == doctest::Approx(1.25).epsilon(1e-10));
}

TEST_CASE("exponential tail transform is exact for pure exponentials") {
    // ∫_a^∞ e^{-r x} dx = e^{-r a}/r
    const double v = quad::integrate_exp_tail([](double) { return 1.0; }, 3.0, 0.5);
    CHECK(v == doctest::Approx(std::exp(-1.5) / 0.5).epsilon(1e-12));

    // ∫_0^∞ x e^{-x} dx = 1
    const double m = quad::integrate_exp_tail([](double x) { return x; }, 0.0, 1.0);
    CHECK(m == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("power tail transform matches the closed form") {
    // ∫_a^∞ x^{-4} dx = a^{-3}/3
    const double v = quad::integrate_power_tail([](double x) { return std::pow(x, -4.0); }, 2.0);
    CHECK(v == doctest::Approx(std::pow(2.0, -3.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("agrees with the midpoint oracle on a lumpy integrand") {
    const auto f = [](double x) { return std::exp(-x) * (2.0 + std::sin(5.0 * x)); };
    const double adaptive = quad::integrate(f, 0.0, 10.0);
    const double brute = oracles::riemann(f, 0.0, 10.0, 400000);
    CHECK(std::fabs(adaptive - brute) / brute < 1e-8);
}

TEST_CASE("interval budget exhaustion raises IntegrationError") {
    // Integrable singularity with a hopeless budget.
    const quad::QuadOptions tight{1e-300, 1e-16, 8};
    const auto f = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK_THROWS_AS((void)quad::integrate(f, 0.0, 1.0, tight), quad::IntegrationError);
}
