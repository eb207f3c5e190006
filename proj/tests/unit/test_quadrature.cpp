#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "anharmonic/quadrature.hpp"
#include "generators.hpp"

using namespace anharmonic;
using std::numbers::pi;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    for (int n : {2, 5, 16}) {
        const auto rule = quad::gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        for (int p = 0; p < 2 * n; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("adaptive integration of smooth and kinked integrands") {
    CHECK(quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
    const std::vector<double> kinks{0.3};
    const double v = quad::integrate_piecewise([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, kinks);
    CHECK(v == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("filon is exact for quadratics") {
    auto f = [](double x) { return 1.0 + 2.0 * x - x * x; };
    // int_0^1 (1 + 2x - x^2) cos(w x) dx in closed form
    const double w = 37.0;
    auto F = [&](double x) {
        const double s = std::sin(w * x), c = std::cos(w * x);
        return (1.0 + 2.0 * x - x * x) * s / w + (2.0 - 2.0 * x) * c / (w * w) + 2.0 * s / (w * w * w);
    };
    CHECK(quad::filon(f, 0.0, 1.0, w, quad::Kernel::Cos, 1) == doctest::Approx(F(1.0) - F(0.0)).epsilon(1e-12));
}

TEST_CASE("oscillatory integrals match direct quadrature") {
    testgen::Gen g(21);
    for (int i = 0; i < 30; ++i) {
        const double w = g.log_uniform(0.5, 500.0);
        const double a = g.uniform(-2.0, 0.0), b = g.uniform(0.5, 2.0);
        auto f = [](double x) { return std::exp(-x * x) + x; };
        const auto kernel = g.coin() ? quad::Kernel::Cos : quad::Kernel::Sin;
        const double osc = quad::oscillatory(f, a, b, w, kernel);
        const double direct = quad::integrate(
            [&](double x) { return f(x) * (kernel == quad::Kernel::Cos ? std::cos(w * x) : std::sin(w * x)); }, a, b,
            1e-12);
        CHECK(std::abs(osc - direct) < 1e-9);
    }
}
