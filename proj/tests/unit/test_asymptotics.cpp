#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "anharmonic/asymptotics.hpp"
#include "anharmonic/errors.hpp"
#include "anharmonic/fit.hpp"
#include "generators.hpp"

using namespace anharmonic;
using std::numbers::pi;

namespace {

// C1 straight from the C library gamma.
double c1_oracle(double a) {
    return 4.0 * std::tgamma(1.5) * std::tgamma(1.0 / a) / (a * pi * std::tgamma(1.5 + 1.0 / a));
}

std::vector<PotentialSpec> test_potentials() {
    return {
        PotentialSpec::power(2.0),
        PotentialSpec::power(4.0, Perturbation({Step{0.6, -0.4, 0.7}})),
        PotentialSpec::shifted(1.0, 3.0),
        PotentialSpec::quartic(1.0, Perturbation({WindowedCosine{0.5, 3.0, -0.9, 0.9}})),
        PotentialSpec::power(2.0, Perturbation({TruncatedWeierstrass{0.5, 6}}), 4.0),
    };
}

int first_solvable(const PotentialSpec& spec, int from) {
    for (int n = from;; ++n) {
        try {
            (void)quantization_solve(spec, n, TypeTag::N);
            (void)quantization_solve(spec, n, TypeTag::D);
            return n;
        } catch (const Error&) {
        }
    }
}

}  // namespace

TEST_CASE("expansion constants") {
    const auto k2 = constants(2.0, Perturbation::zero());
    CHECK(k2.C1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k2.C0 == 0.0);
    CHECK(std::abs(k2.C2) < 1e-16);
    CHECK(constants(4.0, {}).C1 == doctest::Approx(1.11284).epsilon(1e-5));
    CHECK(std::abs(constants(2.0, Perturbation({TruncatedWeierstrass{0.5, 6}})).C0) < 1e-14);
    CHECK(constants(2.0, Perturbation({Step{1.0, -1.0, 1.0}})).C0 == doctest::Approx(2.0 / pi));
    testgen::Gen g(71);
    for (int i = 0; i < 100; ++i) {
        const double a = g.uniform(1.05, 12.0);
        const auto k = constants(a, {});
        CHECK(k.C1 > 0.0);
        CHECK(k.C1 == doctest::Approx(c1_oracle(a)).epsilon(1e-12));
        CHECK(k.C2 == doctest::Approx((a - 1.0) / std::tan(pi / a) / (12.0 * pi * (2.0 + a) * k.C1)).epsilon(1e-12));
    }
}

TEST_CASE("C2 is continuous through alpha = 1") {
    const double at = constants(1.0, {}).C2;
    CHECK(std::isfinite(at));
    CHECK(constants(1.0 + 1e-6, {}).C2 == doctest::Approx(at).epsilon(1e-5));
    CHECK(constants(1.0 - 1e-6, {}).C2 == doctest::Approx(at).epsilon(1e-5));
}

TEST_CASE("harmonic expansion has only the leading term") {
    for (auto form : {ExpansionForm::Printed, ExpansionForm::Rederived}) {
        const auto row = eigenvalue_expansion(constants(2.0, {}), {}, 10, form);
        CHECK(row.term1 == doctest::Approx(19.0).epsilon(1e-14));
        CHECK(row.term2 == 0.0);
        CHECK(row.term3 == 0.0);
        CHECK(std::abs(row.term4) < 1e-14);
        CHECK(row.predicted == row.term1 + row.term2 + row.term3 + row.term4);
    }
}

TEST_CASE("printed weierstrass third term approaches the dyadic closed form") {
    // The literal term is evaluated at 2 sqrt(2n - 1), which only tends to 2^k along n_k.
    const double tau = 0.5;
    const Perturbation V({TruncatedWeierstrass{tau, 6}});
    const auto k = constants(2.0, V);
    double prev_gap = 1.0;
    for (int kk = 3; kk <= 6; ++kk) {
        const int n = 1 << (2 * kk - 3);
        const auto row = eigenvalue_expansion(k, V, n, ExpansionForm::Printed);
        const double stated = std::pow(n, -(1.0 + tau) / 2.0) * std::pow(2.0, -(5.0 + 3.0 * tau) / 2.0);
        const double gap = std::abs(std::abs(row.term3) / stated - 1.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        // same term at the exact dyadic frequency
        const double at_dyadic = V.cos_transform(std::pow(2.0, kk)) / (4.0 * pi) / std::sqrt(2.0 * n - 1.0);
        CHECK(at_dyadic == doctest::Approx(stated * std::sqrt(2.0 * n) / std::sqrt(2.0 * n - 1.0)).epsilon(1e-10));
    }
    CHECK(prev_gap < 0.03);
}

TEST_CASE("printed fourth term for alpha = 4") {
    const auto k = constants(4.0, {});
    const auto row = eigenvalue_expansion(k, {}, 10, ExpansionForm::Printed);
    CHECK(row.term4 == doctest::Approx((8.0 / 6.0) * k.C2 * std::pow(k.C1, -10.0 / 6.0) * std::pow(19.0, -2.0 / 3.0)));
}

TEST_CASE("term order for the unperturbed expansion") {
    // term4 / term1 falls like (2n - 1)^-2 for every alpha
    for (auto form : {ExpansionForm::Printed, ExpansionForm::Rederived}) {
        for (double a : {3.0, 4.0, 6.0}) {
            const auto k = constants(a, {});
            double scaled_first = 0.0;
            for (int n : {10, 30, 100, 300, 1000}) {
                const auto row = eigenvalue_expansion(k, {}, n, form);
                CHECK(row.term2 == 0.0);
                const double m = 2.0 * n - 1.0;
                CHECK(std::abs(row.term4 / row.term1) < 0.01);
                const double scaled = row.term4 / row.term1 * m * m;
                if (n == 10) scaled_first = scaled;
                CHECK(scaled == doctest::Approx(scaled_first).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("d2 tail") {
    CHECK(d2_asymptotic(2.0, 100.0) == 0.0);
    CHECK(d2_asymptotic(1.5, 100.0) == 0.0);
    CHECK(d2_asymptotic(4.0, 1e4, ExpansionForm::Printed) == doctest::Approx(1.1920e-5).epsilon(1e-4));
    const double coeff3 = 3.0 * 2.0 * std::tgamma(11.0 / 6.0) / std::tan(pi / 3.0) /
                          (48.0 * 5.0 * std::tgamma(1.5) * std::tgamma(1.0 / 3.0));
    CHECK(d2_asymptotic(3.0, 1e4, ExpansionForm::Printed) ==
          doctest::Approx(coeff3 * std::pow(1e4, -5.0 / 6.0)).epsilon(1e-12));
    CHECK(d2_asymptotic(3.0, 1e4, ExpansionForm::Rederived) ==
          doctest::Approx(2.0 * pi * d2_asymptotic(3.0, 1e4, ExpansionForm::Printed)).epsilon(1e-12));
}

TEST_CASE("harmonic quantization roots") {
    const auto spec = PotentialSpec::power(2.0);
    CHECK(std::abs(quantization_solve(spec, 10, TypeTag::D).lambda - 39.0) < 5e-3);
    CHECK(std::abs(quantization_solve(spec, 10, TypeTag::N).lambda - 37.0) < 5e-3);
    const auto ctx = quantization_solve(spec, 10, TypeTag::D);
    CHECK(ctx.mu == doctest::Approx(ctx.lambda - 1.0));
    CHECK(ctx.Q > 0.0);
    CHECK(std::abs(ctx.residual) <= 1e-10);
}

TEST_CASE("merged sequence satisfies the merged relation") {
    for (const auto& spec : test_potentials()) {
        for (int m = 2 * first_solvable(spec, 6); m <= 2 * first_solvable(spec, 6) + 48; m += 4) {
            const auto ctx = merged_root(spec, m);
            const double r = thm2_residual(spec, m, ctx.lambda);
            CHECK(std::abs(r) <= 10.0 / m);
        }
    }
}

TEST_CASE("quantization agrees with the expansion for the harmonic oscillator") {
    const auto spec = PotentialSpec::power(2.0);
    const auto k = constants(2.0, {});
    for (int n = 10; n <= 200; n += 7) {
        const double lam = merged_root(spec, n).lambda;
        CHECK(std::abs(lam - eigenvalue_expansion(k, {}, n).predicted) <= 5.0 / lam);
    }
}

TEST_CASE("quantization roots interlace") {
    for (const auto& spec : test_potentials()) {
        for (auto form : {ExpansionForm::Printed, ExpansionForm::Rederived}) {
            const int first = first_solvable(spec, 5);
            double next_n = quantization_solve(spec, first, TypeTag::N, form).lambda;
            for (int n = first; n <= 200; ++n) {
                const double ln = next_n;
                const double ld = quantization_solve(spec, n, TypeTag::D, form).lambda;
                next_n = quantization_solve(spec, n + 1, TypeTag::N, form).lambda;
                CHECK(ln <= ld);
                CHECK(ld <= next_n);
            }
        }
    }
}

TEST_CASE("quantization relation is monotone in lambda") {
    testgen::Gen g(72);
    for (const auto& spec : test_potentials()) {
        const double base = eval_q(spec, spec.b) + 1.0 + std::abs(mean_integral(spec)) / (4.0 * spec.b);
        for (int trial = 0; trial < 50; ++trial) {
            const double l1 = base + g.log_uniform(1e-3, 1e5);
            const double l2 = l1 * (1.0 + g.uniform(1e-3, 0.5));
            for (auto type : {TypeTag::D, TypeTag::N}) {
                CHECK(quantization_relation(spec, 7, type, l1) < quantization_relation(spec, 7, type, l2));
            }
        }
    }
}

TEST_CASE("quantization reports missing roots at small n") {
    const auto spec = PotentialSpec::power(2.0, {}, 6.0);
    try {
        (void)quantization_solve(spec, 1, TypeTag::N);
        FAIL("expected NoRoot");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRoot);
    }
}

TEST_CASE("theorem 2 residual") {
    const auto harmonic = PotentialSpec::power(2.0);
    CHECK(std::abs(thm2_residual(harmonic, 50, 99.0)) <= 0.02);
    CHECK_THROWS_AS((void)thm2_residual(harmonic, 1, 1.0), Error);

    const auto quartic = PotentialSpec::quartic(0.0);
    const auto s = solve_auto(quartic, 10, 40, Geometry::FullLine, BoundaryCondition::Dirichlet,
                              SolveOptions{.tol = 1e-10, .classify = false});
    std::vector<double> lam, res;
    for (const auto& e : s.entries) {
        lam.push_back(e.lambda);
        res.push_back(thm2_residual(quartic, e.n, e.lambda));
    }
    CHECK(-fit::loglog(lam, res).slope >= 0.75 - 0.1);
}

TEST_CASE("half-line expansions") {
    const auto k = constants(2.0, {});
    (void)k;
    for (auto form : {ExpansionForm::Printed, ExpansionForm::Rederived}) {
        CHECK(halfline_expansion(2.0, {}, 5, BoundaryCondition::Dirichlet, form).predicted ==
              doctest::Approx(19.0).epsilon(1e-14));
        CHECK(halfline_expansion(2.0, {}, 5, BoundaryCondition::Neumann, form).predicted ==
              doctest::Approx(17.0).epsilon(1e-14));
    }
    const Perturbation V({Step{0.3, 0.2, 1.2}});
    for (double a : {2.0, 3.0, 4.0}) {
        for (int n = 1; n <= 100; ++n) {
            const double N = halfline_expansion(a, V, n, BoundaryCondition::Neumann).predicted;
            const double D = halfline_expansion(a, V, n, BoundaryCondition::Dirichlet).predicted;
            const double N1 = halfline_expansion(a, V, n + 1, BoundaryCondition::Neumann).predicted;
            CHECK(N <= D);
            CHECK(D <= N1);
        }
    }
}

TEST_CASE("counting function") {
    const auto harmonic = PotentialSpec::power(2.0);
    // 49.5 is the b = 0 value; with b = 1 the two sides differ by O(lambda^-1/2)
    CHECK(std::abs(counting_asymptotic(harmonic, 99.0) - 49.5) < 0.05);
    const double exact = 2.0 / pi * (action_Q(harmonic, 1.0, 99.0) + std::sqrt(98.0));
    CHECK(counting_asymptotic(harmonic, 99.0) == doctest::Approx(exact).epsilon(1e-14));
    const auto p = BoundaryProblem::automatic(harmonic, 1000.0);
    CHECK(sturm_count(p, harmonic, 99.0) == 50);
    CHECK(counting_asymptotic(harmonic, 1.0 + 1e-10) < 1e-4);
    CHECK(counting_asymptotic(harmonic, 1.0 + 1e-10) > 0.0);

    const auto quartic = PotentialSpec::power(4.0);
    const auto pq = BoundaryProblem::automatic(quartic, 1000.0);
    CHECK(std::abs(counting_asymptotic(quartic, 1e3) - sturm_count(pq, quartic, 1e3)) <= 1.5);
}

TEST_CASE("counting function stays within a bounded band") {
    for (const auto& spec : test_potentials()) {
        if (spec.b != 1.0) continue;  // the O(1) constant grows with the support radius
        const auto p = BoundaryProblem::automatic(spec, 1000.0);
        const double start = std::max(10.0, eval_q(spec, spec.b) + 1e-6);
        for (double lam = start; lam <= 1000.0; lam += 7.3) {
            CHECK(std::abs(counting_asymptotic(spec, lam) - sturm_count(p, spec, lam)) <= 2.0);
        }
    }
}

TEST_CASE("heat trace leading term") {
    CHECK(heat_trace_leading(2.0, 0.05) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(heat_trace_leading(2.0, 0.05) - 1.0 / (2.0 * std::sinh(0.05)) == doctest::Approx(10.0 - 9.99167).epsilon(1e-2));
    double prev = 0.0;
    for (double t : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const double ratio = heat_trace_leading(2.0, t) * 2.0 * std::sinh(t);
        CHECK(std::abs(ratio - 1.0) < std::abs(prev - 1.0) + 1e-15);
        prev = ratio;
    }
    CHECK(std::abs(prev - 1.0) < 1e-9);
    CHECK(heat_trace_leading(2.0, 0.1, 1.0) == doctest::Approx(5.0 - std::sqrt(10.0 / pi)));
}

TEST_CASE("numeric heat trace tail closes the harmonic series") {
    const auto harmonic = PotentialSpec::power(2.0);
    std::vector<double> lam;
    for (int n = 1; n <= 100; ++n) lam.push_back(2.0 * n - 1.0);
    const auto h = heat_trace_numeric(harmonic, lam, 0.05);
    CHECK(h.terms == 100);
    CHECK(h.total == doctest::Approx(1.0 / (2.0 * std::sinh(0.05))).epsilon(1e-3));
}

TEST_CASE("quartic action coefficients") {
    const auto r = quartic_Q_coefficients(0.0, 1.0);
    const double a0 = std::tgamma(1.5) * std::tgamma(0.25) / (4.0 * std::tgamma(1.75));
    CHECK(r.a[0] == doctest::Approx(a0).epsilon(1e-8));
    CHECK(std::abs(r.a[2]) < 1e-6);
    CHECK(std::abs(r.a[1]) < 1e-6);
    CHECK(r.condition_number < 1e12);
    const auto printed = quartic_Q_coefficients(0.0, 1.0, ExpansionForm::Printed);
    CHECK(printed.a[1] == doctest::Approx(r.a[1] - 1.0).epsilon(1e-12));
}
