#pragma once

#include <span>
#include <vector>

namespace anharmonic::fit {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Weighted least squares y ~ intercept + slope * x. Empty weights mean 1.
LineFit line(std::span<const double> x, std::span<const double> y, std::span<const double> w = {});

/// Slope of log|y| against log x.
LineFit loglog(std::span<const double> x, std::span<const double> y, std::span<const double> w = {});

/// Running maximum of |y| taken from the right: env_i = max_{j >= i} |y_j|.
std::vector<double> upper_envelope(std::span<const double> y);

/// True when |y| is non-increasing along the sequence.
bool non_increasing(std::span<const double> y);

}  // namespace anharmonic::fit
