#pragma once

#include <span>

namespace anharmonic::specfun {

struct GammaResult {
    double value;
    double relative_error_bound;
};

/// Gamma function on (0, 171). Lanczos approximation (g = 7, nine terms);
/// arguments below 1/2 are lifted with Gamma(x) = Gamma(x + 1) / x.
/// Throws Error{Domain} for x <= 0 and Error{Overflow} for x >= 171.
GammaResult gamma_checked(double x);

inline double gamma(double x) { return gamma_checked(x).value; }

/// cos(x) / sin(x); Error{Pole} when |sin x| <= 1e-300.
double cot(double x);

/// log(sum(exp(v))) without overflow. Empty input gives -inf.
double log_sum_exp(std::span<const double> v);

}  // namespace anharmonic::specfun
