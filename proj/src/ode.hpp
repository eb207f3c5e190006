#pragma once

// Adaptive RKF78 integration split at potential breakpoints. The right-hand
// side sees x clamped into the open segment so one-sided values are used at
// jumps.

#include <algorithm>
#include <array>
#include <boost/numeric/odeint/integrate/integrate_adaptive.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>
#include <cmath>
#include <vector>

namespace anharmonic::detail {

template <std::size_t N>
using OdeState = std::array<double, N>;

/// Breakpoints strictly between a and b, ordered from a towards b.
inline std::vector<double> segment_points(double a, double b, const std::vector<double>& breaks) {
    std::vector<double> pts{a};
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    for (double p : breaks) {
        if (p > lo && p < hi) pts.push_back(p);
    }
    pts.push_back(b);
    if (a < b) {
        std::sort(pts.begin(), pts.end());
    } else {
        std::sort(pts.begin(), pts.end(), std::greater<>());
    }
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Integrates rhs(x_clamped, state, dstate) from a to b.
template <std::size_t N, class Rhs>
void integrate_split(const Rhs& rhs, OdeState<N>& state, double a, double b, const std::vector<double>& breaks,
                     double abs_tol, double rel_tol) {
    namespace odeint = boost::numeric::odeint;
    if (a == b) return;
    auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<OdeState<N>>());
    const auto pts = segment_points(a, b, breaks);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double p = pts[i];
        const double q = pts[i + 1];
        const double lo = std::min(p, q);
        const double hi = std::max(p, q);
        const double nudge = 1e-13 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
        if (hi - lo <= 4.0 * nudge) continue;
        const auto sys = [&](const OdeState<N>& s, OdeState<N>& ds, double x) {
            rhs(std::clamp(x, lo + nudge, hi - nudge), s, ds);
        };
        const double dt = (q - p) / 4.0;
        odeint::integrate_adaptive(stepper, sys, state, p, q, dt);
    }
}

}  // namespace anharmonic::detail
