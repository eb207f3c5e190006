#include "anharmonic/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "anharmonic/errors.hpp"

namespace anharmonic {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Overflow: return "overflow";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::NoRoot: return "no root";
        case ErrorKind::NonMonotone: return "non-monotone potential";
        case ErrorKind::Precondition: return "precondition violated";
        case ErrorKind::TruncationMargin: return "truncation margin violated";
        case ErrorKind::MissedIndex: return "missed eigenvalue index";
        case ErrorKind::DegenerateEigenfunction: return "degenerate eigenfunction";
        case ErrorKind::NonContraction: return "Picard iteration did not contract";
        case ErrorKind::IllConditioned: return "ill-conditioned regression";
        case ErrorKind::Config: return "configuration error";
        case ErrorKind::Numerical: return "numerical failure";
    }
    return "error";
}

namespace specfun {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Valid for x >= 1/2.
double lanczos(double x) {
    const double z = x - 1.0;
    double sum = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    const double t = z + kLanczosG + 0.5;
    // Split the power so t^(z+1/2) does not overflow before exp(-t) brings it down.
    const double half_power = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * sum;
}

}  // namespace

GammaResult gamma_checked(double x) {
    if (!(x > 0.0)) {
        throw Error(ErrorKind::Domain, "gamma requires x > 0");
    }
    if (x >= 171.0) {
        throw Error(ErrorKind::Overflow, "gamma overflows double for x >= 171");
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (x < 0.5) {
        const double value = lanczos(x + 1.0) / x;
        return {value, 2e-15 + 8.0 * eps};
    }
    const double value = lanczos(x);
    // Rounding in pow grows with the exponent times log of the base.
    const double bound = 2e-15 + 4.0 * eps * x * std::log(x + kLanczosG + 0.5);
    return {value, bound};
}

double cot(double x) {
    const double s = std::sin(x);
    if (std::abs(s) <= 1e-300) {
        throw Error(ErrorKind::Pole, "cot evaluated at an integer multiple of pi");
    }
    return std::cos(x) / s;
}

double log_sum_exp(std::span<const double> v) {
    if (v.empty()) {
        return -std::numeric_limits<double>::infinity();
    }
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) {
        return m;
    }
    double acc = 0.0;
    for (double x : v) {
        acc += std::exp(x - m);
    }
    return m + std::log(acc);
}

}  // namespace specfun
}  // namespace anharmonic
