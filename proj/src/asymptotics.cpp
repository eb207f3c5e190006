#include "anharmonic/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "anharmonic/errors.hpp"
#include "anharmonic/quadrature.hpp"
#include "anharmonic/specfun.hpp"

namespace anharmonic {

std::string_view to_string(ExpansionForm f) noexcept { return f == ExpansionForm::Printed ? "printed" : "rederived"; }

namespace {

constexpr double kPi = std::numbers::pi;

double leading_Q_coefficient(double alpha) {
    return specfun::gamma(1.5) * specfun::gamma(1.0 / alpha) / (alpha * specfun::gamma(1.5 + 1.0 / alpha));
}

// (alpha - 1) cot(pi / alpha), continuous through alpha = 1.
double scaled_cot(double alpha) {
    if (std::abs(alpha - 1.0) < 1e-6) return -1.0 / kPi;
    const double k = std::round(1.0 / alpha);
    if (k >= 2.0 && std::abs(1.0 / alpha - k) < 1e-9) {
        throw Error(ErrorKind::Pole, "cot(pi/alpha) has a pole at alpha = 1/k");
    }
    return (alpha - 1.0) * specfun::cot(kPi / alpha);
}

double parity_sign(int n) { return (n - 1) % 2 == 0 ? 1.0 : -1.0; }

}  // namespace

ExpansionConstants constants(double alpha, const Perturbation& V) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::Domain, "alpha must be positive");
    ExpansionConstants k;
    k.alpha = alpha;
    k.C1 = 4.0 * leading_Q_coefficient(alpha) / kPi;
    k.C0 = V.integral() / kPi;
    k.C2 = scaled_cot(alpha) / (12.0 * kPi * (2.0 + alpha) * k.C1);
    return k;
}

ExpansionRow expansion_at(const ExpansionConstants& k, const Perturbation& V, double m, int parity_index,
                          ExpansionForm form) {
    const double a = k.alpha;
    const double inv_p = 2.0 * a / (a + 2.0);
    ExpansionRow r;
    r.n = parity_index;
    r.term1 = std::pow(k.C1, -inv_p) * std::pow(m, inv_p);
    const double omega = 2.0 * std::pow(k.C1, -a / (a + 2.0)) * std::pow(m, a / (a + 2.0));
    const double osc = V.is_zero() ? 0.0 : V.cos_transform(omega);
    const double m2 = std::pow(m, -2.0 / (a + 2.0));
    const double m4 = std::pow(m, -4.0 / (a + 2.0));
    if (form == ExpansionForm::Printed) {
        const double c = std::pow(k.C1, -(a + 4.0) / (a + 2.0));
        r.term2 = inv_p * k.C0 * c * m2;
        r.term3 = inv_p * c * m2 * osc / (4.0 * kPi);
        r.term4 = inv_p * k.C2 * std::pow(k.C1, -(a + 6.0) / (a + 2.0)) * m4;
    } else {
        const double c = std::pow(k.C1, -a / (a + 2.0));
        r.term2 = inv_p * k.C0 * c * m2;
        r.term3 = inv_p * parity_sign(parity_index) * c * m2 * osc / kPi;
        r.term4 = inv_p * 8.0 * k.C2 * std::pow(k.C1, (2.0 - a) / (a + 2.0)) * m4;
    }
    r.predicted = r.term1 + r.term2 + r.term3 + r.term4;
    return r;
}

ExpansionRow eigenvalue_expansion(const ExpansionConstants& k, const Perturbation& V, int n, ExpansionForm form) {
    if (n < 1) throw Error(ErrorKind::Domain, "index n must be >= 1");
    return expansion_at(k, V, 2.0 * n - 1.0, n, form);
}

double d2_asymptotic(double alpha, double lambda, ExpansionForm form) {
    if (!(lambda > 0.0)) throw Error(ErrorKind::Domain, "d2 needs lambda > 0");
    if (alpha <= 2.0) return 0.0;
    const double coef = alpha * scaled_cot(alpha) * specfun::gamma(1.5 + 1.0 / alpha) /
                        (48.0 * (2.0 + alpha) * specfun::gamma(1.5) * specfun::gamma(1.0 / alpha));
    const double scale = form == ExpansionForm::Printed ? 1.0 : 2.0 * kPi;
    return scale * coef * std::pow(lambda, -(alpha + 2.0) / (2.0 * alpha));
}

namespace {

struct RelationParts {
    double mu, Q, correction, d2, value;
};

RelationParts relation_parts(const PotentialSpec& spec, double phase, double lambda, double osc_sign,
                             ExpansionForm form) {
    const double qb = eval_q0(spec, spec.b);
    RelationParts p{};
    p.mu = lambda - qb;
    p.Q = action_Q(spec, spec.b, lambda);
    const double mean = mean_integral(spec);
    const double sq_mu = std::sqrt(p.mu);
    const double osc =
        spec.perturbation.is_zero() ? 0.0 : spec.perturbation.cos_transform(2.0 * sq_mu);
    p.d2 = d2_asymptotic(leading_alpha(spec), lambda, form);
    if (form == ExpansionForm::Printed) {
        const double s = 4.0 * std::sqrt(lambda);
        p.correction = mean / s + osc / s;
    } else {
        const double s = 4.0 * sq_mu;
        p.correction = mean / s - osc_sign * osc / s;
    }
    p.value = p.Q + phase + spec.b * sq_mu - p.correction - p.d2;
    return p;
}

double phase_of(TypeTag type) {
    if (type == TypeTag::Unknown) throw Error(ErrorKind::Precondition, "quantization needs a D or N type");
    return type == TypeTag::D ? kPi / 4.0 : 3.0 * kPi / 4.0;
}

}  // namespace

double quantization_relation(const PotentialSpec& spec, int n, TypeTag type, double lambda, ExpansionForm form) {
    const double sign = type == TypeTag::D ? 1.0 : -1.0;
    return relation_parts(spec, phase_of(type), lambda, sign, form).value - n * kPi;
}

QuantizationContext quantization_solve(const PotentialSpec& spec, int n, TypeTag type, ExpansionForm form) {
    spec.validate();
    const auto G = [&](double l) { return quantization_relation(spec, n, type, l, form); };
    const double lo0 = eval_q0(spec, spec.b) + 1.0;
    double lo = lo0;
    double glo = G(lo);
    if (glo > 0.0) {
        throw Error(ErrorKind::NoRoot, "quantization relation has no root above q0(b) + 1 for n = " + std::to_string(n));
    }
    double hi = lo + 8.0;
    double ghi = G(hi);
    while (ghi < 0.0) {
        lo = hi;
        glo = ghi;
        hi = lo0 + 2.0 * (hi - lo0);
        ghi = G(hi);
        if (!std::isfinite(hi)) throw Error(ErrorKind::NoRoot, "quantization bracket diverged");
    }
    const auto stop = [](double a, double b) {
        return std::abs(b - a) <= 1e-15 * std::max(1.0, std::abs(a)) * 8.0;
    };
    std::uintmax_t iters = 300;
    double root = lo;
    if (glo == 0.0) {
        root = lo;
    } else if (ghi == 0.0) {
        root = hi;
    } else {
        const auto [a, b] = boost::math::tools::toms748_solve(G, lo, hi, glo, ghi, stop, iters);
        root = std::abs(G(a)) < std::abs(G(b)) ? a : b;
    }
    const double sign = type == TypeTag::D ? 1.0 : -1.0;
    const auto parts = relation_parts(spec, phase_of(type), root, sign, form);
    QuantizationContext ctx;
    ctx.lambda = root;
    ctx.mu = parts.mu;
    ctx.Q = parts.Q;
    ctx.correction = parts.correction;
    ctx.d2 = parts.d2;
    ctx.type = type;
    ctx.residual = parts.value - n * kPi;
    if (std::abs(ctx.residual) > 1e-10 * std::max(1.0, n * kPi)) {
        throw Error(ErrorKind::Numerical, "quantization root did not reach the requested residual");
    }
    return ctx;
}

QuantizationContext merged_root(const PotentialSpec& spec, int m, ExpansionForm form) {
    if (m < 1) throw Error(ErrorKind::Domain, "merged index must be >= 1");
    return m % 2 == 1 ? quantization_solve(spec, (m + 1) / 2, TypeTag::N, form)
                      : quantization_solve(spec, m / 2, TypeTag::D, form);
}

double thm2_residual(const PotentialSpec& spec, int n, double lambda, ExpansionForm form) {
    const double qb = eval_q0(spec, spec.b);
    if (!(lambda > qb)) throw Error(ErrorKind::Precondition, "thm2_residual needs lambda > q0(b)");
    // Printed: sqrt(lambda) in prefactor and frequency. Rederived: sqrt(mu), as in the matching step.
    const bool printed = form == ExpansionForm::Printed;
    const double sq = std::sqrt(printed ? lambda : lambda - qb);
    const double Q = action_Q(spec, spec.b, lambda);
    const double mean = mean_integral(spec);
    const double osc = spec.perturbation.is_zero() ? 0.0 : spec.perturbation.cos_transform(2.0 * sq);
    const double osc_sign = printed ? -1.0 : (n % 2 == 0 ? 1.0 : -1.0);
    const double rhs = Q + spec.b * std::sqrt(lambda - qb) - mean / (4.0 * sq) + osc_sign * osc / (4.0 * sq);
    return kPi / 4.0 * (2.0 * n - 1.0) - rhs;
}

ExpansionRow halfline_expansion(double alpha, const Perturbation& V, int n, BoundaryCondition bc, ExpansionForm form) {
    if (n < 1) throw Error(ErrorKind::Domain, "index n must be >= 1");
    const bool dirichlet = bc == BoundaryCondition::Dirichlet;
    if (form == ExpansionForm::Rederived) {
        // The half-line problem is the parity sector of the even extension.
        const auto W = V.even_extension();
        const auto k = constants(alpha, W);
        const int n_full = dirichlet ? 2 * n : 2 * n - 1;
        auto row = expansion_at(k, W, 2.0 * n_full - 1.0, n_full, form);
        row.n = n;
        return row;
    }
    const auto half = V.restricted(0.0, std::numeric_limits<double>::infinity());
    auto k = constants(alpha, half);
    const double a = alpha;
    const double inv_p = 2.0 * a / (a + 2.0);
    const double m = dirichlet ? 4.0 * n - 1.0 : 4.0 * n - 3.0;
    const double m_second = 4.0 * n - 3.0;
    ExpansionRow r;
    r.n = n;
    r.term1 = std::pow(k.C1, -inv_p) * std::pow(m, inv_p);
    const double c2_exp = dirichlet ? -(a + 1.0) / (a + 2.0) : -(a + 4.0) / (a + 2.0);
    r.term2 = inv_p * k.C0 * std::pow(k.C1, c2_exp) * std::pow(m_second, -2.0 / (a + 2.0));
    const double omega = 2.0 * std::pow(k.C1, -a / (a + 2.0)) * std::pow(m, a / (a + 2.0));
    const double osc = half.is_zero() ? 0.0 : half.cos_transform(omega);
    r.term3 = inv_p / (4.0 * kPi) * std::pow(k.C1, -(a + 4.0) / (a + 2.0)) * std::pow(m, -2.0 / (a + 2.0)) * osc;
    r.term4 = inv_p * k.C2 * std::pow(k.C1, -(a + 6.0) / (a + 2.0)) * std::pow(m, -4.0 / (a + 2.0));
    r.predicted = r.term1 + r.term2 + r.term3 + r.term4;
    return r;
}

double counting_asymptotic(const PotentialSpec& spec, double lambda) {
    const double qb = eval_q0(spec, spec.b);
    if (!(lambda > qb)) throw Error(ErrorKind::Precondition, "counting_asymptotic needs lambda > q0(b)");
    return 2.0 / kPi * (action_Q(spec, spec.b, lambda) + spec.b * std::sqrt(lambda - qb));
}

double heat_trace_leading(double alpha, double t, double c_shift) {
    if (!(t > 0.0)) throw Error(ErrorKind::Domain, "heat trace needs t > 0");
    const double rs = 1.0 / std::sqrt(kPi);
    return rs * specfun::gamma((alpha + 1.0) / alpha) * std::pow(t, -(alpha + 2.0) / (2.0 * alpha)) -
           c_shift * rs / std::sqrt(t);
}

double heat_trace_cutoff(double t, double eps) { return -std::log(eps) / t; }

HeatTrace heat_trace_numeric(const PotentialSpec& spec, std::span<const double> eigenvalues, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::Domain, "heat trace needs t > 0");
    HeatTrace h;
    for (double l : eigenvalues) h.partial_sum += std::exp(-t * l);
    h.terms = static_cast<int>(eigenvalues.size());
    if (!eigenvalues.empty()) {
        const double top = eigenvalues.back();
        const double base = counting_asymptotic(spec, top);
        const auto integrand = [&](double l) { return std::exp(-t * l) * (counting_asymptotic(spec, l) - base); };
        h.tail = t * quad::integrate(integrand, top, top + 40.0 / t, 1e-10);
    }
    h.total = h.partial_sum + h.tail;
    return h;
}

QuarticCoefficients quartic_Q_coefficients(double c, double b, ExpansionForm form, const Perturbation& V) {
    const auto spec = PotentialSpec::quartic(c, V, b);
    constexpr int kPoints = 64;
    constexpr int kTerms = 7;
    const double qb = eval_q0(spec, b);
    Eigen::MatrixXd A(kPoints, kTerms);
    Eigen::VectorXd y(kPoints);
    for (int i = 0; i < kPoints; ++i) {
        const double l = std::pow(10.0, 4.0 + 4.0 * i / (kPoints - 1.0));
        y(i) = action_Q(spec, b, l) + b * std::sqrt(l - qb);
        for (int k = 0; k < kTerms; ++k) A(i, k) = std::pow(l, (3.0 - k) / 4.0);
    }
    Eigen::VectorXd scale(kTerms);
    for (int k = 0; k < kTerms; ++k) {
        scale(k) = A.col(k).norm();
        A.col(k) /= scale(k);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    QuarticCoefficients out;
    out.condition_number = sv(0) / sv(sv.size() - 1);
    if (!(out.condition_number <= 1e12)) {
        throw Error(ErrorKind::IllConditioned, "quartic regression condition number exceeds 1e12");
    }
    const Eigen::VectorXd x = svd.solve(y);
    out.max_fit_residual = (A * x - y).cwiseAbs().maxCoeff();
    for (int k = 0; k < kTerms; ++k) out.a[static_cast<std::size_t>(k)] = x(k) / scale(k);
    if (form == ExpansionForm::Printed) {
        const auto q = [&](double s) { return eval_q(spec, s); };
        const auto br = spec.perturbation.breakpoints();
        out.a[1] -= 1.0;
        out.a[5] -= 0.25 * quad::integrate_piecewise(q, -b, b, br, 1e-14);
    } else {
        out.a[5] -= 0.25 * mean_integral(spec);
    }
    return out;
}

double quartic_residual(const QuarticCoefficients& coeffs, const PotentialSpec& spec, int n, double lambda,
                        ExpansionForm form) {
    double sum = 0.0;
    for (int k = 0; k < 7; ++k) sum += coeffs.a[static_cast<std::size_t>(k)] * std::pow(lambda, (3.0 - k) / 4.0);
    const double sq = std::sqrt(lambda);
    const double osc = spec.perturbation.is_zero() ? 0.0 : spec.perturbation.cos_transform(2.0 * sq);
    const double osc_sign = form == ExpansionForm::Printed ? -1.0 : (n % 2 == 0 ? 1.0 : -1.0);
    return kPi / 4.0 * (2.0 * n - 1.0) - (sum + osc_sign * osc / (4.0 * sq));
}

}  // namespace anharmonic
