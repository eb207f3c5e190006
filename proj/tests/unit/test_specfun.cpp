#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/specfun.hpp"
#include "generators.hpp"

using namespace anharmonic;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::Numerical;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("gamma at half-integers and quarter") {
    CHECK(rel(specfun::gamma(0.5), 1.7724538509055160) < 1e-14);
    CHECK(rel(specfun::gamma(1.5), 0.8862269254527580) < 1e-14);
    CHECK(rel(specfun::gamma(0.25), 3.6256099082219083) < 1e-13);
}

TEST_CASE("gamma reproduces factorials") {
    double f = 1.0;
    for (int k = 1; k <= 20; ++k) {
        CHECK(rel(specfun::gamma(k), f) < 1e-13);
        f *= k;
    }
}

TEST_CASE("gamma agrees with the C library on [0.1, 30]") {
    testgen::Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const double x = g.uniform(0.1, 30.0);
        const auto r = specfun::gamma_checked(x);
        CHECK(r.value > 0.0);
        CHECK(r.relative_error_bound <= 1e-13);
        CHECK(rel(r.value, std::tgamma(x)) < 1e-13);
    }
}

TEST_CASE("gamma recurrence on random arguments") {
    testgen::Gen g(12);
    for (int i = 0; i < 1000; ++i) {
        const double x = g.uniform(0.1, 30.0);
        CHECK(rel(specfun::gamma(x + 1.0) / specfun::gamma(x), x) < 1e-12);
    }
}

TEST_CASE("gamma domain and overflow") {
    CHECK(kind_of([] { (void)specfun::gamma(0.0); }) == ErrorKind::Domain);
    CHECK(kind_of([] { (void)specfun::gamma(-2.5); }) == ErrorKind::Domain);
    CHECK(kind_of([] { (void)specfun::gamma(171.0); }) == ErrorKind::Overflow);
    CHECK(std::isfinite(specfun::gamma(170.5)));
}

TEST_CASE("cot values and pole") {
    using std::numbers::pi;
    CHECK(std::abs(specfun::cot(pi / 2)) < 1e-15);
    CHECK(specfun::cot(pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(specfun::cot(pi / 3) == doctest::Approx(0.5773502691896258).epsilon(1e-15));
    CHECK(kind_of([] { (void)specfun::cot(0.0); }) == ErrorKind::Pole);
}

TEST_CASE("log_sum_exp") {
    const std::vector<double> big{1000.0, 1000.0};
    CHECK(specfun::log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)));
    const std::vector<double> small{-3.0, 0.5, 2.0};
    CHECK(specfun::log_sum_exp(small) == doctest::Approx(std::log(std::exp(-3.0) + std::exp(0.5) + std::exp(2.0))));
    CHECK(std::isinf(specfun::log_sum_exp({})));
}
