#include "anharmonic/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "anharmonic/errors.hpp"
#include "anharmonic/quadrature.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

double plain_q0_prime(const std::vector<PowerTerm>& terms, double x) {
    double d = 0.0;
    for (const auto& t : terms) d += t.a * t.alpha * std::pow(x, t.alpha - 1.0);
    return d;
}

double plain_monotone_from(const std::vector<PowerTerm>& terms) {
    const bool all_positive = std::all_of(terms.begin(), terms.end(), [](const PowerTerm& t) { return t.a > 0.0; });
    if (all_positive) return 0.0;
    const auto& top = terms.back();
    double lower = 0.0;
    double second = 0.0;
    for (std::size_t j = 0; j + 1 < terms.size(); ++j) {
        lower += std::abs(terms[j].a * terms[j].alpha);
        second = std::max(second, terms[j].alpha);
    }
    // Beyond R the top term dominates every lower one.
    const double R = 1.01 * std::max(1.0, std::pow(lower / (top.a * top.alpha), 1.0 / (top.alpha - second)));
    constexpr int kSamples = 8192;
    double last_bad = -1.0;
    for (int i = kSamples; i >= 1; --i) {
        const double x = R * i / kSamples;
        if (plain_q0_prime(terms, x) <= 0.0) {
            last_bad = x;
            break;
        }
    }
    if (last_bad < 0.0) return 0.0;
    double lo = last_bad;
    double hi = std::min(R, last_bad + R / kSamples);
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (plain_q0_prime(terms, mid) <= 0.0 ? lo : hi) = mid;
    }
    return hi;
}

void require_monotone_tail(const PotentialSpec& spec) {
    if (monotone_from(spec) > spec.b) {
        throw Error(ErrorKind::NonMonotone, "q0 is not increasing on [b, inf); the turning point is not unique");
    }
}

}  // namespace

void PotentialSpec::validate() const {
    if (!(b > 0.0) || !std::isfinite(b)) {
        throw Error(ErrorKind::Config, "support radius b must be positive and finite");
    }
    std::visit(overloaded{
                   [this](const PlainSum&) {
                       if (terms.empty()) {
                           throw Error(ErrorKind::Config, "a plain sum potential needs at least one term");
                       }
                       for (std::size_t j = 0; j < terms.size(); ++j) {
                           if (!(terms[j].alpha > 0.0) || !std::isfinite(terms[j].a)) {
                               throw Error(ErrorKind::Config, "power terms need alpha > 0 and a finite coefficient");
                           }
                           if (j > 0 && !(terms[j].alpha > terms[j - 1].alpha)) {
                               throw Error(ErrorKind::Config, "power exponents must increase strictly");
                           }
                       }
                       if (!(terms.back().a > 0.0)) {
                           throw Error(ErrorKind::Config, "the leading coefficient must be positive");
                       }
                   },
                   [](const ShiftedPower& s) {
                       if (!(s.alpha > 0.0)) throw Error(ErrorKind::Config, "shifted power needs alpha > 0");
                       if (s.c < 0.0 && !is_integer(s.alpha)) {
                           throw Error(ErrorKind::Config, "a negative shift needs an integer exponent");
                       }
                   },
                   [](const Quartic& q) {
                       if (!std::isfinite(q.c)) throw Error(ErrorKind::Config, "quartic shift must be finite");
                   },
               },
               composite);
    if (!perturbation.is_zero()) {
        const auto [lo, hi] = perturbation.support();
        if (!(lo > -b && hi < b)) {
            throw Error(ErrorKind::Config, "perturbation support must lie inside (-b, b)");
        }
    }
}

PotentialSpec PotentialSpec::power(double alpha, Perturbation V, double b) {
    PotentialSpec s{{PowerTerm{1.0, alpha}}, PlainSum{}, std::move(V), b};
    s.validate();
    return s;
}

PotentialSpec PotentialSpec::shifted(double c, double alpha, Perturbation V, double b) {
    PotentialSpec s{{}, ShiftedPower{c, alpha}, std::move(V), b};
    s.validate();
    return s;
}

PotentialSpec PotentialSpec::quartic(double c, Perturbation V, double b) {
    PotentialSpec s{{}, Quartic{c}, std::move(V), b};
    s.validate();
    return s;
}

double eval_q0(const PotentialSpec& spec, double x) {
    const double ax = std::abs(x);
    return std::visit(overloaded{
                          [&](const PlainSum&) {
                              double q = 0.0;
                              for (const auto& t : spec.terms) q += t.a * std::pow(ax, t.alpha);
                              return q;
                          },
                          [&](const ShiftedPower& s) { return std::pow(ax + s.c, s.alpha); },
                          [&](const Quartic& q) {
                              const double u = x * x + q.c;
                              return u * u;
                          },
                      },
                      spec.composite);
}

double eval_q0_prime(const PotentialSpec& spec, double x) {
    return std::visit(overloaded{
                          [&](const PlainSum&) { return plain_q0_prime(spec.terms, x); },
                          [&](const ShiftedPower& s) { return s.alpha * std::pow(x + s.c, s.alpha - 1.0); },
                          [&](const Quartic& q) { return 4.0 * x * (x * x + q.c); },
                      },
                      spec.composite);
}

double eval_q(const PotentialSpec& spec, double x) { return eval_q0(spec, x) + spec.perturbation(x); }

double leading_alpha(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [&](const PlainSum&) { return spec.terms.back().alpha; },
                          [](const ShiftedPower& s) { return s.alpha; },
                          [](const Quartic&) { return 4.0; },
                      },
                      spec.composite);
}

double monotone_from(const PotentialSpec& spec) {
    return std::visit(overloaded{
                          [&](const PlainSum&) { return plain_monotone_from(spec.terms); },
                          [](const ShiftedPower& s) { return std::max(0.0, -s.c); },
                          [](const Quartic& q) { return std::sqrt(std::max(0.0, -q.c)); },
                      },
                      spec.composite);
}

double turning_point(const PotentialSpec& spec, double lambda) {
    const double qb = eval_q0(spec, spec.b);
    if (!(lambda > qb)) {
        throw Error(ErrorKind::NoRoot, "turning point needs lambda > q0(b)");
    }
    require_monotone_tail(spec);
    double lo = spec.b;
    double hi = 2.0 * spec.b + 1.0;
    while (eval_q0(spec, hi) < lambda) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) throw Error(ErrorKind::NoRoot, "turning point bracket diverged");
    }
    // Newton safeguarded by the bracket.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = eval_q0(spec, x) - lambda;
        if (f == 0.0) return x;
        (f < 0.0 ? lo : hi) = x;
        const double d = eval_q0_prime(spec, x);
        double next = x - f / d;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - x);
        x = next;
        if (step <= 1e-13 * std::max(1.0, x) || hi - lo <= 1e-13 * std::max(1.0, x)) break;
    }
    return x;
}

double action_Q(const PotentialSpec& spec, double x0, double lambda) {
    if (x0 < spec.b) {
        throw Error(ErrorKind::Precondition, "action_Q needs x0 >= b so that V vanishes on the path");
    }
    const double a = turning_point(spec, lambda);
    if (x0 >= a) return 0.0;
    // t = a - u^2 removes the square-root behaviour at the turning point.
    const auto integrand = [&](double u) {
        const double t = a - u * u;
        return 2.0 * u * std::sqrt(std::max(0.0, lambda - eval_q0(spec, t)));
    };
    const double top = std::sqrt(a - x0);
    return quad::integrate(integrand, 0.0, top, 1e-14);
}

double Q_power_expansion(double b, double lambda, double alpha) {
    const double lead = specfun::gamma(1.5) * specfun::gamma(1.0 / alpha) / (alpha * specfun::gamma(1.5 + 1.0 / alpha));
    const double sq = std::sqrt(lambda);
    return lead * std::pow(lambda, (alpha + 2.0) / (2.0 * alpha)) - b * sq +
           std::pow(b, alpha + 1.0) / ((alpha + 1.0) * 2.0 * sq);
}

double mean_integral(const PotentialSpec& spec) {
    const double b = spec.b;
    const double qb = eval_q0(spec, b);
    const auto f = [&](double s) { return eval_q0(spec, s); };
    const double zero[] = {0.0};
    const double q0_part = quad::integrate_piecewise(f, -b, b, zero, 1e-14);
    return q0_part - 2.0 * b * qb + spec.perturbation.integral();
}

}  // namespace anharmonic
