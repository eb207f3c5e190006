#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "anharmonic/eigensolve.hpp"
#include "anharmonic/errors.hpp"
#include "anharmonic/fit.hpp"
#include "generators.hpp"

using namespace anharmonic;
using std::numbers::pi;

namespace {

BoundaryProblem grid(double L, double h, Scheme scheme = Scheme::Numerov) {
    BoundaryProblem p;
    p.L = L;
    p.h = h;
    p.scheme = scheme;
    return p;
}

// Lowest eigenvalue of -d^2 + x^4 in a truncated harmonic-oscillator basis.
double quartic_ground_state_hermite(int size) {
    const int big = size + 4;
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(big, big);
    for (int k = 0; k + 1 < big; ++k) X(k, k + 1) = X(k + 1, k) = std::sqrt((k + 1) / 2.0);
    const Eigen::MatrixXd X2 = X * X;
    Eigen::MatrixXd H = X2 * X2 - X2;
    for (int k = 0; k < big; ++k) H(k, k) += 2.0 * k + 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(size, size));
    return es.eigenvalues()(0);
}

}  // namespace

TEST_CASE("sturm count examples") {
    const auto harmonic = PotentialSpec::power(2.0);
    const auto p = grid(8.0, 2e-3);
    CHECK(sturm_count(p, harmonic, 9.5) == 5);
    CHECK(sturm_count(p, harmonic, 0.5) == 0);
    auto half = p;
    half.geometry = Geometry::HalfLine;
    half.bc_at_zero = BoundaryCondition::Neumann;
    CHECK(sturm_count(half, harmonic, 6.0) == 2);
    half.bc_at_zero = BoundaryCondition::Dirichlet;
    CHECK(sturm_count(half, harmonic, 6.0) == 1);
}

TEST_CASE("sturm count refuses lambda near the truncation wall") {
    const auto p = grid(5.0, 1e-2);
    try {
        (void)sturm_count(p, PotentialSpec::power(2.0), 10.0);
        FAIL("expected TruncationMargin");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TruncationMargin);
    }
}

TEST_CASE("harmonic spectrum") {
    const auto s = solve_auto(PotentialSpec::power(2.0), 1, 10, Geometry::FullLine, BoundaryCondition::Dirichlet,
                              SolveOptions{.tol = 1e-8});
    REQUIRE(s.entries.size() == 10);
    for (const auto& e : s.entries) {
        CHECK(std::abs(e.lambda - (2.0 * e.n - 1.0)) < 1e-6);
        CHECK(e.est_error < 1e-6);
    }
}

TEST_CASE("quartic ground state against a hermite-basis oracle") {
    const double oracle = quartic_ground_state_hermite(160);
    CHECK(oracle == doctest::Approx(1.060362090484).epsilon(1e-11));
    const auto s = solve_auto(PotentialSpec::power(4.0), 1, 1);
    CHECK(std::abs(s.entries.at(0).lambda - oracle) < 1e-9);
}

TEST_CASE("index certification by sturm counts") {
    testgen::Gen g(61);
    for (int trial = 0; trial < 4; ++trial) {
        const auto spec = g.confining(1.0);
        const auto p = BoundaryProblem::automatic(spec, lambda_upper_estimate(spec, 25, Geometry::FullLine));
        const double tol = 1e-8;
        const auto s = solve_range(p, spec, 1, 25, SolveOptions{.tol = tol});
        for (const auto& e : s.entries) {
            CHECK(sturm_count(p, spec, e.discrete_lambda + tol) - sturm_count(p, spec, e.discrete_lambda - tol) == 1);
            CHECK(sturm_count(p, spec, e.discrete_lambda - tol) == e.n - 1);
        }
        for (std::size_t i = 1; i < s.entries.size(); ++i) {
            CHECK(s.entries[i].lambda > s.entries[i - 1].lambda);
            CHECK(s.entries[i].n == s.entries[i - 1].n + 1);
        }
    }
}

TEST_CASE("scheme convergence orders on the harmonic oscillator") {
    const auto harmonic = PotentialSpec::power(2.0);
    const int n = 5;
    for (auto [scheme, order, h0] : {std::tuple{Scheme::FD2, 2.0, 0.04}, std::tuple{Scheme::Numerov, 4.0, 0.1}}) {
        std::vector<double> hs, errs;
        for (double h = h0; h > h0 / 5; h /= 2) {
            const auto s = solve_range(grid(9.0, h, scheme), harmonic, n, n, SolveOptions{.tol = 1e-10, .polish = false});
            hs.push_back(h);
            errs.push_back(s.entries.at(0).lambda - (2.0 * n - 1.0));
        }
        CHECK(fit::loglog(hs, errs).slope == doctest::Approx(order).epsilon(0.2 / order));
        // Richardson: successive error ratios
        for (std::size_t i = 2; i < errs.size(); ++i) {
            const double p = std::log2((errs[i - 2] - errs[i - 1]) / (errs[i - 1] - errs[i]));
            CHECK(std::abs(p - order) < 0.2);
        }
    }
}

TEST_CASE("truncation insensitivity") {
    const auto spec = PotentialSpec::power(2.0, Perturbation({Step{0.7, -0.3, 0.6}}));
    const auto p = BoundaryProblem::automatic(spec, lambda_upper_estimate(spec, 15, Geometry::FullLine));
    auto wider = p;
    wider.L *= 1.2;
    const auto a = solve_range(p, spec, 1, 15, SolveOptions{.tol = 1e-10});
    const auto b = solve_range(wider, spec, 1, 15, SolveOptions{.tol = 1e-10});
    for (std::size_t i = 0; i < a.entries.size(); ++i) CHECK(std::abs(a.entries[i].lambda - b.entries[i].lambda) < 1e-9);
}

TEST_CASE("unit step shifts harmonic eigenvalues by at most one") {
    const auto base = solve_auto(PotentialSpec::power(2.0), 1, 12);
    const auto stepped = solve_auto(PotentialSpec::power(2.0, Perturbation({Step{1.0, -1.0, 1.0}}), 1.5), 1, 12);
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(stepped.entries[i].lambda >= base.entries[i].lambda - 1e-8);
        CHECK(stepped.entries[i].lambda <= base.entries[i].lambda + 1.0 + 1e-8);
    }
}

TEST_CASE("nonnegative perturbations never lower eigenvalues") {
    testgen::Gen g(62);
    for (int trial = 0; trial < 5; ++trial) {
        auto spec = g.confining(1.5);
        const auto base = solve_auto(spec, 1, 10);
        spec.perturbation = g.nonnegative_steps(1.4);
        const auto bumped = solve_auto(spec, 1, 10);
        for (std::size_t i = 0; i < base.entries.size(); ++i) {
            CHECK(bumped.entries[i].lambda >= base.entries[i].lambda - 1e-8);
        }
    }
}

TEST_CASE("full line is the merge of the two half-line spectra for even potentials") {
    const auto spec = PotentialSpec::power(3.0, Perturbation({Step{0.8, -0.5, 0.5}}));
    const double tol = 1e-9;
    const SolveOptions opt{.tol = tol, .classify = false};
    const auto full = solve_auto(spec, 1, 20, Geometry::FullLine, BoundaryCondition::Dirichlet, opt);
    const auto neu = solve_auto(spec, 1, 10, Geometry::HalfLine, BoundaryCondition::Neumann, opt);
    const auto dir = solve_auto(spec, 1, 10, Geometry::HalfLine, BoundaryCondition::Dirichlet, opt);
    for (int k = 0; k < 10; ++k) {
        CHECK(std::abs(full.entries[2 * k].lambda - neu.entries[k].lambda) <= 2 * tol);
        CHECK(std::abs(full.entries[2 * k + 1].lambda - dir.entries[k].lambda) <= 2 * tol);
    }
}

TEST_CASE("boundary angle follows parity for the harmonic oscillator") {
    const auto spec = PotentialSpec::power(2.0);
    const auto s = solve_auto(spec, 2, 12);
    for (const auto& e : s.entries) {
        const double phi = e.phi;
        CHECK(phi >= 0.0);
        CHECK(phi < 2.0 * pi);
        if (e.n % 2 == 1) {
            CHECK(e.type == TypeTag::N);
            CHECK(std::abs(std::sin(phi)) < 1e-6);
        } else {
            CHECK(e.type == TypeTag::D);
            CHECK(std::abs(std::cos(phi)) < 1e-6);
        }
    }
}

TEST_CASE("asymmetric step keeps the N, D alternation at large n") {
    const auto spec = PotentialSpec::power(2.0, Perturbation({Step{0.5, 0.1, 0.8}}));
    const auto s = solve_auto(spec, 20, 40);
    for (const auto& e : s.entries) CHECK(e.type == (e.n % 2 ? TypeTag::N : TypeTag::D));
}

TEST_CASE("eigenfunction is normalized and vanishes far out") {
    const auto spec = PotentialSpec::power(2.0);
    const auto p = BoundaryProblem::automatic(spec, 20.0);
    std::vector<double> xs;
    for (double x = -p.L; x <= p.L; x += 0.01) xs.push_back(x);
    const auto f = eigenfunction(p, spec, 5.0, 3, xs);
    double norm = 0.0;
    for (const auto& s : f) norm += s.y * s.y * 0.01;
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));
    // third state is (4x^2 - 2) exp(-x^2/2) up to normalization
    const double c = std::pow(pi, -0.25) / std::sqrt(8.0);
    for (const auto& s : f) CHECK(std::abs(std::abs(s.y) - std::abs(c * (4 * s.x * s.x - 2) * std::exp(-s.x * s.x / 2))) < 1e-5);
}
