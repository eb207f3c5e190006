#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "anharmonic/errors.hpp"
#include "anharmonic/potential.hpp"
#include "anharmonic/quadrature.hpp"
#include "generators.hpp"

using namespace anharmonic;
using std::numbers::pi;

namespace {

PotentialSpec sum(std::vector<PowerTerm> terms, double b = 1.0) {
    PotentialSpec s;
    s.terms = std::move(terms);
    s.b = b;
    return s;
}

}  // namespace

TEST_CASE("eval_q examples") {
    CHECK(eval_q(PotentialSpec::power(2.0), 3.0) == 9.0);
    CHECK(eval_q(PotentialSpec::quartic(1.0), 2.0) == 25.0);
    const auto cosine = PotentialSpec::power(2.0, Perturbation({WindowedCosine{1.0, 4.0, -pi, pi}}), 4.0);
    CHECK(eval_q(cosine, 0.0) == 1.0);
    CHECK(eval_q0(PotentialSpec::shifted(1.0, 3.0), -1.0) == 8.0);
}

TEST_CASE("turning point examples") {
    CHECK(turning_point(PotentialSpec::power(2.0), 9.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(turning_point(PotentialSpec::shifted(1.0, 2.0), 16.0) == doctest::Approx(3.0).epsilon(1e-13));
    const auto s = sum({{1.0, 2.0}, {1.0, 4.0}});
    // a^2 = (-1 + sqrt(401)) / 2
    CHECK(turning_point(s, 100.0) == doctest::Approx(std::sqrt((-1.0 + std::sqrt(401.0)) / 2.0)).epsilon(1e-13));
}

TEST_CASE("turning point inverts q0") {
    testgen::Gen g(51);
    for (int i = 0; i < 200; ++i) {
        const auto spec = g.confining(g.uniform(0.5, 2.0));
        const double lambda = eval_q0(spec, spec.b) + g.log_uniform(1e-2, 1e6);
        const double a = turning_point(spec, lambda);
        CHECK(a > spec.b);
        CHECK(std::abs(eval_q0(spec, a) - lambda) <= 1e-10 * lambda);
    }
}

TEST_CASE("turning point errors") {
    CHECK_THROWS_AS((void)turning_point(PotentialSpec::power(2.0), 0.5), Error);
    const auto wiggly = sum({{-4.0, 2.0}, {1.0, 4.0}}, 0.5);
    try {
        (void)turning_point(wiggly, 100.0);
        FAIL("expected NonMonotone");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonMonotone);
    }
    CHECK(monotone_from(wiggly) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("action_Q examples") {
    const auto harmonic = PotentialSpec::power(2.0);
    CHECK(action_Q(harmonic, 1.0, 4.0) == doctest::Approx(2.0 * pi / 3.0 - std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(action_Q(harmonic, 3.0, 9.0) == 0.0);
    const auto quartic = PotentialSpec::power(4.0);
    CHECK(std::abs(action_Q(quartic, 1.0, 1e4) - Q_power_expansion(1.0, 1e4, 4.0)) < 2e-4);
}

TEST_CASE("action_Q against direct quadrature") {
    testgen::Gen g(52);
    for (int i = 0; i < 30; ++i) {
        const auto spec = g.confining(1.0);
        const double lambda = eval_q0(spec, 1.0) + g.log_uniform(1.0, 1e4);
        const double a = turning_point(spec, lambda);
        const double direct = quad::integrate(
            [&](double t) { return std::sqrt(std::max(0.0, lambda - eval_q0(spec, t))); }, 1.0, a, 1e-12);
        CHECK(action_Q(spec, 1.0, lambda) == doctest::Approx(direct).epsilon(1e-7));
    }
}

TEST_CASE("action_Q is monotone in lambda and x0") {
    testgen::Gen g(53);
    for (int trial = 0; trial < 10; ++trial) {
        const auto spec = g.confining(1.0);
        const double base = eval_q0(spec, 1.0);
        double prev = 0.0;
        for (double lam = base + 1.0; lam < base + 1e4; lam *= 1.7) {
            const double q = action_Q(spec, 1.0, lam);
            CHECK(q > prev);
            prev = q;
        }
        const double lam = base + 500.0;
        const double a = turning_point(spec, lam);
        prev = action_Q(spec, 1.0, lam);
        for (int k = 1; k < 10; ++k) {
            const double q = action_Q(spec, 1.0 + (a - 1.0) * k / 10.0, lam);
            CHECK(q < prev);
            prev = q;
        }
    }
}

TEST_CASE("Q power expansion examples") {
    const double lam = 1e6;
    const double closed = pi / 4.0 * lam - std::sqrt(lam) + 1.0 / (6.0 * std::sqrt(lam));
    CHECK(Q_power_expansion(1.0, lam, 2.0) == doctest::Approx(closed).epsilon(1e-9));
    CHECK(Q_power_expansion(0.0, 4.0, 2.0) == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("mean integral examples") {
    CHECK(mean_integral(PotentialSpec::power(2.0)) == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));
    CHECK(mean_integral(PotentialSpec::power(2.0, Perturbation({Step{1.0, -0.5, 0.5}}))) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(mean_integral(PotentialSpec::power(2.0, Perturbation({TruncatedWeierstrass{0.5, 6}}), 4.0)) ==
          doctest::Approx(-256.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("validation rejects malformed specs") {
    CHECK_THROWS_AS(sum({}).validate(), Error);
    CHECK_THROWS_AS(sum({{1.0, 4.0}, {1.0, 2.0}}).validate(), Error);
    CHECK_THROWS_AS(sum({{1.0, 2.0}, {-1.0, 4.0}}).validate(), Error);
    CHECK_THROWS_AS(PotentialSpec::power(2.0, Perturbation({Step{1.0, -1.0, 1.0}}), 1.0).validate(), Error);
    CHECK_THROWS_AS(PotentialSpec::shifted(-0.5, 2.5).validate(), Error);
    CHECK_NOTHROW(PotentialSpec::shifted(-0.5, 2.0).validate());
}
