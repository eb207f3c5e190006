#pragma once

#include <functional>
#include <span>
#include <vector>

namespace anharmonic::quad {

using Integrand = std::function<double(double)>;

enum class Kernel { Cos, Sin };

/// Adaptive Gauss-Kronrod (31 point) on [a, b]. The tolerance is relative
/// to the L1 norm of the integrand.
double integrate(const Integrand& f, double a, double b, double rel_tol = 1e-13,
                 double* error_estimate = nullptr);

/// Same, split at every breakpoint strictly inside (a, b).
double integrate_piecewise(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                           double rel_tol = 1e-13);

/// Filon-Simpson rule with 2 * pairs subintervals for int_a^b f(x) k(omega x) dx.
/// Exact whenever f is a quadratic on each panel pair.
double filon(const Integrand& f, double a, double b, double omega, Kernel kernel, int pairs);

/// int_a^b f(x) k(omega x) dx with f smooth between breakpoints. Pieces with
/// omega * length > 20 use Filon with panel doubling; shorter ones use
/// adaptive Gauss-Kronrod on the product.
double oscillatory(const Integrand& f, double a, double b, double omega, Kernel kernel,
                   std::span<const double> breakpoints = {}, double tol = 1e-12);

inline constexpr double kFilonThreshold = 20.0;

struct GaussLegendreRule {
    std::vector<double> nodes;    // ascending, in (-1, 1)
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
GaussLegendreRule gauss_legendre(int n);

}  // namespace anharmonic::quad
