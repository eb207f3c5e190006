#pragma once

#include <string_view>
#include <vector>

#include "anharmonic/potential.hpp"

namespace anharmonic {

/// plus: [0, b] with y(0) = c1, y'(0) = c2.
/// minus: the reflected problem -y'' + q(-x) y = lambda y on [0, b] with y(0) = c1, y'(0) = -c2.
enum class Side { Plus, Minus };

std::string_view to_string(Side s) noexcept;

struct InteriorSolution {
    double lambda = 0.0;
    double mu = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    Side side = Side::Plus;
    /// Sample points: 0, Gauss-Legendre panel nodes, b.
    std::vector<double> x;
    /// Quadrature weights on x for integrals over [0, b] (zero at 0 and b).
    std::vector<double> weight;
    /// ODE solution (returned path).
    std::vector<double> f;
    std::vector<double> df;
    /// Picard solution of the integral equation on the same points.
    std::vector<double> f_picard;
    std::vector<double> df_picard;
    int picard_iterations = 0;
    /// sup |f_picard - f| / max(1, sup |f|).
    double path_difference = 0.0;
};

struct InteriorOptions {
    double picard_tol = 1e-12;
    int max_iterations = 200;
    double agreement_tol = 1e-8;
    /// Throw Error(Numerical) when the two paths disagree beyond agreement_tol.
    bool enforce_agreement = true;
};

/// Solves the Volterra equation by Picard iteration and the equivalent IVP by
/// adaptive integration; the IVP values are returned after both agree.
[[nodiscard]] InteriorSolution solve_interior(const PotentialSpec& spec, double lambda, double c1, double c2, Side side,
                                              const InteriorOptions& options = {});

struct KFunctionals {
    double lambda = 0.0;
    double k1_plus = 0.0;
    double k2_plus = 0.0;
    double k1_minus = 0.0;
    double k2_minus = 0.0;
};

[[nodiscard]] KFunctionals k_functionals(const PotentialSpec& spec, const InteriorSolution& plus,
                                         const InteriorSolution& minus);

/// k1 = int_0^b cos(sqrt(mu) s) [q(+-s) - q(b)] f(s) ds and k2 with sin.
[[nodiscard]] std::pair<double, double> k_pair(const PotentialSpec& spec, const InteriorSolution& sol);

struct BoundaryValues {
    double f = 0.0;
    double df = 0.0;
};

/// f(b), f'(b) rebuilt from c1, c2, k1, k2 through the cos/sin combinations.
[[nodiscard]] BoundaryValues reconstruct_boundary(const InteriorSolution& sol, double k1, double k2, double b);

enum class LemmaQuantity { FEst, K1, K2 };

std::string_view to_string(LemmaQuantity q) noexcept;

struct RateCheck {
    std::vector<double> lambdas;
    std::vector<double> errors;
    double exponent = 0.0;           // -slope of log error vs log lambda
    double envelope_exponent = 0.0;  // same on the running-max envelope
    bool monotone = true;            // false: oscillation masks the rate
};

/// Error terms of the interior lemmas with c1 = 1, c2 = 0:
///   FEst: sup |f+ - cos(sqrt(mu) x)|
///   K1:   |k1+ - (1/2) int_0^b (q - q(b))|
///   K2:   |k2+|
[[nodiscard]] RateCheck lemma_rate_check(const PotentialSpec& spec, const std::vector<double>& lambda_grid,
                                         LemmaQuantity which);

/// Geometric grid of `count` points between lo and hi.
[[nodiscard]] std::vector<double> geometric_grid(double lo, double hi, int count);

}  // namespace anharmonic
