#include "anharmonic/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "anharmonic/errors.hpp"

namespace anharmonic::quad {

double integrate(const Integrand& f, double a, double b, double rel_tol, double* error_estimate) {
    if (a == b) {
        if (error_estimate) *error_estimate = 0.0;
        return 0.0;
    }
    double err = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol, &err);
    if (error_estimate) *error_estimate = err;
    return value;
}

namespace {

std::vector<double> cut_points(double a, double b, std::span<const double> breakpoints) {
    std::vector<double> cuts{a};
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

struct FilonWeights {
    double alpha, beta, gamma;
};

FilonWeights filon_weights(double theta) {
    if (std::abs(theta) < 0.1) {
        const double t2 = theta * theta;
        const double t3 = t2 * theta;
        return {
            t3 * (2.0 / 45.0 - t2 * (2.0 / 315.0 - t2 * (2.0 / 4725.0))),
            2.0 / 3.0 + t2 * (2.0 / 15.0 - t2 * (4.0 / 105.0 - t2 * (2.0 / 567.0))),
            4.0 / 3.0 - t2 * (2.0 / 15.0 - t2 * (1.0 / 210.0 - t2 * (1.0 / 11340.0))),
        };
    }
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double t3 = theta * theta * theta;
    return {
        (theta * theta + theta * s * c - 2.0 * s * s) / t3,
        2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3,
        4.0 * (s - theta * c) / t3,
    };
}

}  // namespace

double integrate_piecewise(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                           double rel_tol) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    const auto cuts = cut_points(std::min(a, b), std::max(a, b), breakpoints);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += integrate(f, cuts[i], cuts[i + 1], rel_tol);
    }
    return sign * total;
}

double filon(const Integrand& f, double a, double b, double omega, Kernel kernel, int pairs) {
    if (pairs < 1) {
        throw Error(ErrorKind::Precondition, "filon needs at least one panel pair");
    }
    const int panels = 2 * pairs;
    const double h = (b - a) / panels;
    const auto [alpha, beta, gamma] = filon_weights(omega * h);
    const auto trig = [&](double x) {
        return kernel == Kernel::Cos ? std::cos(omega * x) : std::sin(omega * x);
    };
    double even = 0.0;
    double odd = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double x = a + i * h;
        const double v = f(x) * trig(x);
        if (i % 2 == 0) {
            even += (i == 0 || i == panels) ? 0.5 * v : v;
        } else {
            odd += v;
        }
    }
    const double fa = f(a);
    const double fb = f(b);
    double boundary = 0.0;
    if (kernel == Kernel::Cos) {
        boundary = fb * std::sin(omega * b) - fa * std::sin(omega * a);
    } else {
        boundary = -(fb * std::cos(omega * b) - fa * std::cos(omega * a));
    }
    return h * (alpha * boundary + beta * even + gamma * odd);
}

double oscillatory(const Integrand& f, double a, double b, double omega, Kernel kernel,
                   std::span<const double> breakpoints, double tol) {
    if (a == b) return 0.0;
    if (b < a) return -oscillatory(f, b, a, omega, kernel, breakpoints, tol);
    const auto cuts = cut_points(a, b, breakpoints);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        if (std::abs(omega) * (hi - lo) > kFilonThreshold) {
            // Filon's error depends on the smoothness of f only; double the
            // panel count until successive estimates agree.
            int pairs = 8;
            double prev = filon(f, lo, hi, omega, kernel, pairs);
            double cur = prev;
            for (int iter = 0; iter < 16; ++iter) {
                pairs *= 2;
                cur = filon(f, lo, hi, omega, kernel, pairs);
                if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) break;
                prev = cur;
            }
            total += cur;
        } else {
            const auto product = [&](double x) {
                return f(x) * (kernel == Kernel::Cos ? std::cos(omega * x) : std::sin(omega * x));
            };
            total += integrate(product, lo, hi, std::min(1e-13, tol));
        }
    }
    return total;
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) {
        throw Error(ErrorKind::Precondition, "Gauss-Legendre rule needs n >= 1");
    }
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1.0;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace anharmonic::quad
