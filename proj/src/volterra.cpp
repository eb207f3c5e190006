#include "anharmonic/volterra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "anharmonic/errors.hpp"
#include "anharmonic/fit.hpp"
#include "anharmonic/quadrature.hpp"
#include "ode.hpp"

namespace anharmonic {

std::string_view to_string(Side s) noexcept { return s == Side::Plus ? "plus" : "minus"; }

std::string_view to_string(LemmaQuantity q) noexcept {
    switch (q) {
        case LemmaQuantity::FEst: return "f_est";
        case LemmaQuantity::K1: return "k1";
        case LemmaQuantity::K2: return "k2";
    }
    return "?";
}

namespace {

constexpr int kPanelOrder = 16;

// Spectral integration on [-1, 1]: S(i, j) = int_{-1}^{t_i} l_j(t) dt for the
// Lagrange basis l_j on the Gauss-Legendre nodes t.
struct PanelRule {
    quad::GaussLegendreRule gl;
    Eigen::MatrixXd S;
};

const PanelRule& panel_rule() {
    static const PanelRule rule = [] {
        PanelRule r;
        r.gl = quad::gauss_legendre(kPanelOrder);
        const int n = kPanelOrder;
        Eigen::MatrixXd V(n, n), W(n, n);
        for (int i = 0; i < n; ++i) {
            const double t = r.gl.nodes[static_cast<std::size_t>(i)];
            // Legendre values P_0..P_n at t.
            std::vector<double> P(static_cast<std::size_t>(n + 1));
            P[0] = 1.0;
            P[1] = t;
            for (int k = 1; k < n; ++k) {
                P[static_cast<std::size_t>(k + 1)] =
                    ((2.0 * k + 1.0) * t * P[static_cast<std::size_t>(k)] - k * P[static_cast<std::size_t>(k - 1)]) /
                    (k + 1.0);
            }
            for (int k = 0; k < n; ++k) {
                V(i, k) = P[static_cast<std::size_t>(k)];
                // int_{-1}^{t} P_k = (P_{k+1} - P_{k-1}) / (2k + 1); P_{k+-1}(-1) terms cancel.
                W(i, k) = k == 0 ? t + 1.0
                                 : (P[static_cast<std::size_t>(k + 1)] - P[static_cast<std::size_t>(k - 1)]) /
                                       (2.0 * k + 1.0);
            }
        }
        r.S = W * V.inverse();
        return r;
    }();
    return rule;
}

double side_q(const PotentialSpec& spec, Side side, double x) {
    return eval_q(spec, side == Side::Plus ? x : -x);
}

std::vector<double> side_breaks(const PotentialSpec& spec, Side side) {
    std::vector<double> out;
    for (double p : spec.perturbation.breakpoints()) {
        const double s = side == Side::Plus ? p : -p;
        if (s > 0.0 && s < spec.b) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Panel {
    double a, w;
};

std::vector<Panel> make_panels(const PotentialSpec& spec, Side side, double sqrt_mu) {
    const double k_max = 2.0 * sqrt_mu + spec.perturbation.max_frequency() + 1.0;
    const double w_max = std::min(1.5 / k_max, spec.b / 4.0);
    std::vector<double> cuts{0.0};
    for (double p : side_breaks(spec, side)) cuts.push_back(p);
    cuts.push_back(spec.b);
    std::vector<Panel> panels;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        const int count = std::max(1, static_cast<int>(std::ceil(len / w_max)));
        const double w = len / count;
        for (int j = 0; j < count; ++j) panels.push_back({cuts[i] + j * w, w});
    }
    return panels;
}

}  // namespace

InteriorSolution solve_interior(const PotentialSpec& spec, double lambda, double c1, double c2, Side side,
                                const InteriorOptions& options) {
    spec.validate();
    const double qb = eval_q0(spec, spec.b);
    if (!(lambda > qb + 1.0)) {
        throw Error(ErrorKind::Precondition, "interior solutions need lambda > q0(b) + 1");
    }
    const double mu = lambda - qb;
    const double k = std::sqrt(mu);
    const double slope0 = side == Side::Plus ? c2 : -c2;

    const auto& rule = panel_rule();
    const auto panels = make_panels(spec, side, k);
    const std::size_t P = panels.size();
    const std::size_t n_nodes = P * kPanelOrder;

    InteriorSolution sol;
    sol.lambda = lambda;
    sol.mu = mu;
    sol.c1 = c1;
    sol.c2 = c2;
    sol.side = side;
    sol.x.reserve(n_nodes + 2);
    sol.weight.reserve(n_nodes + 2);
    sol.x.push_back(0.0);
    sol.weight.push_back(0.0);
    for (const auto& pn : panels) {
        for (int i = 0; i < kPanelOrder; ++i) {
            sol.x.push_back(pn.a + 0.5 * pn.w * (rule.gl.nodes[static_cast<std::size_t>(i)] + 1.0));
            sol.weight.push_back(0.5 * pn.w * rule.gl.weights[static_cast<std::size_t>(i)]);
        }
    }
    sol.x.push_back(spec.b);
    sol.weight.push_back(0.0);
    const std::size_t M = sol.x.size();

    std::vector<double> cs(M), sn(M), d(M), f0(M), df0(M);
    for (std::size_t i = 0; i < M; ++i) {
        cs[i] = std::cos(k * sol.x[i]);
        sn[i] = std::sin(k * sol.x[i]);
        d[i] = (i == 0 || i + 1 == M) ? 0.0 : side_q(spec, side, sol.x[i]) - qb;
        f0[i] = c1 * cs[i] + slope0 * sn[i] / k;
        df0[i] = -c1 * k * sn[i] + slope0 * cs[i];
    }

    // Picard iteration on the split kernel sin(k(x - s)) = sin kx cos ks - cos kx sin ks.
    std::vector<double> f = f0, df = df0, next(M), dnext(M), gc(kPanelOrder), gs(kPanelOrder);
    const double scale = std::max({1.0, std::abs(c1), std::abs(c2) / k});
    int iter = 0;
    for (;; ++iter) {
        if (iter >= options.max_iterations) {
            throw Error(ErrorKind::NonContraction,
                        "Picard iteration exceeded " + std::to_string(options.max_iterations) +
                            " steps; lambda is below the contraction regime");
        }
        double A = 0.0;  // int_0^x cos(ks) g
        double B = 0.0;  // int_0^x sin(ks) g
        next[0] = f0[0];
        dnext[0] = df0[0];
        for (std::size_t p = 0; p < P; ++p) {
            const std::size_t base = 1 + p * kPanelOrder;
            for (int j = 0; j < kPanelOrder; ++j) {
                const double g = d[base + j] * f[base + j];
                gc[static_cast<std::size_t>(j)] = cs[base + j] * g;
                gs[static_cast<std::size_t>(j)] = sn[base + j] * g;
            }
            const double half = 0.5 * panels[p].w;
            for (int i = 0; i < kPanelOrder; ++i) {
                double a = 0.0, b = 0.0;
                for (int j = 0; j < kPanelOrder; ++j) {
                    a += rule.S(i, j) * gc[static_cast<std::size_t>(j)];
                    b += rule.S(i, j) * gs[static_cast<std::size_t>(j)];
                }
                const double Ai = A + half * a;
                const double Bi = B + half * b;
                const std::size_t idx = base + static_cast<std::size_t>(i);
                next[idx] = f0[idx] + (sn[idx] * Ai - cs[idx] * Bi) / k;
                dnext[idx] = df0[idx] + cs[idx] * Ai + sn[idx] * Bi;
            }
            for (int j = 0; j < kPanelOrder; ++j) {
                const double w = half * rule.gl.weights[static_cast<std::size_t>(j)];
                A += w * gc[static_cast<std::size_t>(j)];
                B += w * gs[static_cast<std::size_t>(j)];
            }
        }
        next[M - 1] = f0[M - 1] + (sn[M - 1] * A - cs[M - 1] * B) / k;
        dnext[M - 1] = df0[M - 1] + cs[M - 1] * A + sn[M - 1] * B;
        double diff = 0.0;
        for (std::size_t i = 0; i < M; ++i) diff = std::max(diff, std::abs(next[i] - f[i]));
        f.swap(next);
        df.swap(dnext);
        if (diff <= options.picard_tol * scale) break;
    }
    sol.picard_iterations = iter + 1;
    sol.f_picard = f;
    sol.df_picard = df;

    // Direct integration of -y'' + (q - lambda) y = 0.
    const auto breaks = side_breaks(spec, side);
    const auto rhs = [&](double x, const detail::OdeState<2>& s, detail::OdeState<2>& ds) {
        ds[0] = s[1];
        ds[1] = (side_q(spec, side, x) - lambda) * s[0];
    };
    detail::OdeState<2> st{c1, slope0};
    sol.f.resize(M);
    sol.df.resize(M);
    sol.f[0] = c1;
    sol.df[0] = slope0;
    for (std::size_t i = 1; i < M; ++i) {
        detail::integrate_split<2>(rhs, st, sol.x[i - 1], sol.x[i], breaks, 1e-14 * scale, 1e-13);
        sol.f[i] = st[0];
        sol.df[i] = st[1];
    }
    double diff = 0.0;
    double sup = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        diff = std::max(diff, std::abs(sol.f[i] - sol.f_picard[i]));
        sup = std::max(sup, std::abs(sol.f[i]));
    }
    sol.path_difference = diff / std::max(1.0, sup);
    if (options.enforce_agreement && sol.path_difference > options.agreement_tol) {
        throw Error(ErrorKind::Numerical, "Picard and ODE interior solutions disagree beyond tolerance");
    }
    return sol;
}

std::pair<double, double> k_pair(const PotentialSpec& spec, const InteriorSolution& sol) {
    const double qb = eval_q0(spec, spec.b);
    const double k = std::sqrt(sol.mu);
    double k1 = 0.0;
    double k2 = 0.0;
    for (std::size_t i = 0; i < sol.x.size(); ++i) {
        if (sol.weight[i] == 0.0) continue;
        const double g = (side_q(spec, sol.side, sol.x[i]) - qb) * sol.f[i] * sol.weight[i];
        k1 += std::cos(k * sol.x[i]) * g;
        k2 += std::sin(k * sol.x[i]) * g;
    }
    return {k1, k2};
}

KFunctionals k_functionals(const PotentialSpec& spec, const InteriorSolution& plus, const InteriorSolution& minus) {
    if (plus.side != Side::Plus || minus.side != Side::Minus) {
        throw Error(ErrorKind::Precondition, "k_functionals needs a plus and a minus solution");
    }
    if (plus.lambda != minus.lambda || plus.c1 != minus.c1 || plus.c2 != minus.c2) {
        throw Error(ErrorKind::Precondition, "plus and minus solutions must share lambda, c1 and c2");
    }
    KFunctionals out;
    out.lambda = plus.lambda;
    std::tie(out.k1_plus, out.k2_plus) = k_pair(spec, plus);
    std::tie(out.k1_minus, out.k2_minus) = k_pair(spec, minus);
    return out;
}

BoundaryValues reconstruct_boundary(const InteriorSolution& sol, double k1, double k2, double b) {
    const double k = std::sqrt(sol.mu);
    const double c = std::cos(k * b);
    const double s = std::sin(k * b);
    const double c2 = sol.side == Side::Plus ? sol.c2 : -sol.c2;
    return {c * (sol.c1 - k2 / k) + s * (c2 / k + k1 / k), c * (c2 + k1) + s * (-sol.c1 * k + k2)};
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
    if (count < 2 || !(lo > 0.0) || !(hi > lo)) {
        throw Error(ErrorKind::Precondition, "geometric grid needs 0 < lo < hi and count >= 2");
    }
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, i / (count - 1.0));
    return g;
}

RateCheck lemma_rate_check(const PotentialSpec& spec, const std::vector<double>& lambda_grid, LemmaQuantity which) {
    if (lambda_grid.size() < 5) {
        throw Error(ErrorKind::Precondition, "rate check needs at least 5 lambda values");
    }
    const double qb = eval_q0(spec, spec.b);
    const auto q = [&](double s) { return eval_q(spec, s) - qb; };
    const auto br = spec.perturbation.breakpoints();
    const double half_mean = 0.5 * quad::integrate_piecewise(q, 0.0, spec.b, br, 1e-13);
    RateCheck rc;
    rc.lambdas = lambda_grid;
    for (double l : lambda_grid) {
        const auto sol = solve_interior(spec, l, 1.0, 0.0, Side::Plus);
        double err = 0.0;
        if (which == LemmaQuantity::FEst) {
            const double k = std::sqrt(sol.mu);
            for (std::size_t i = 0; i < sol.x.size(); ++i) {
                err = std::max(err, std::abs(sol.f[i] - std::cos(k * sol.x[i])));
            }
        } else {
            const auto [k1, k2] = k_pair(spec, sol);
            err = which == LemmaQuantity::K1 ? std::abs(k1 - half_mean) : std::abs(k2);
        }
        rc.errors.push_back(std::max(err, 1e-300));
    }
    rc.exponent = -fit::loglog(rc.lambdas, rc.errors).slope;
    const auto env = fit::upper_envelope(rc.errors);
    rc.envelope_exponent = -fit::loglog(rc.lambdas, env).slope;
    rc.monotone = fit::non_increasing(rc.errors);
    return rc;
}

}  // namespace anharmonic
