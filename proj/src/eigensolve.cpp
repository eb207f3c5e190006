#include "anharmonic/eigensolve.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "anharmonic/errors.hpp"
#include "anharmonic/quadrature.hpp"
#include "ode.hpp"

namespace anharmonic {

std::string_view to_string(BoundaryCondition bc) noexcept {
    return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

std::string_view to_string(Scheme s) noexcept { return s == Scheme::FD2 ? "fd2" : "numerov"; }

std::string_view to_string(TypeTag t) noexcept {
    switch (t) {
        case TypeTag::D: return "D";
        case TypeTag::N: return "N";
        case TypeTag::Unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(Geometry g) noexcept { return g == Geometry::FullLine ? "full" : "half"; }

namespace {

constexpr double kMargin = 25.0;
constexpr double kDecayTarget = 30.0;

std::vector<double> potential_breaks(const PotentialSpec& spec) {
    auto br = spec.perturbation.breakpoints();
    br.push_back(0.0);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

// Crude WKB count (1/pi) int sqrt(lambda - q0)_+ over the domain.
double wkb_count(const PotentialSpec& spec, double lambda, Geometry geometry) {
    double R = std::max(1.0, spec.b);
    while (eval_q0(spec, R) < lambda) R *= 1.5;
    constexpr int kPoints = 4000;
    const double dx = R / kPoints;
    double acc = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double x = (i + 0.5) * dx;
        acc += std::sqrt(std::max(0.0, lambda - eval_q0(spec, x))) * dx;
    }
    const double side = acc / std::numbers::pi;
    return geometry == Geometry::FullLine ? 2.0 * side : side;
}

}  // namespace

double lambda_upper_estimate(const PotentialSpec& spec, int n, Geometry geometry) {
    double lo = 0.0;
    double hi = 1.0;
    const double target = n + 1.0;
    while (wkb_count(spec, hi, geometry) < target) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (wkb_count(spec, mid, geometry) < target ? lo : hi) = mid;
    }
    return 1.05 * hi + spec.perturbation.sup_bound() + 2.0;
}

BoundaryProblem BoundaryProblem::automatic(const PotentialSpec& spec, double lambda_max, Geometry geometry,
                                           BoundaryCondition bc, Scheme scheme) {
    spec.validate();
    double x = std::max(spec.b, monotone_from(spec)) * 1.05 + 0.5;
    double decay = 0.0;
    double prev = x;
    while (eval_q0(spec, x) < lambda_max + kMargin || decay < 20.0) {
        prev = x;
        x += 0.005 * std::max(1.0, x);
        const double mid = 0.5 * (prev + x);
        decay += std::sqrt(std::max(0.0, eval_q0(spec, mid) - lambda_max)) * (x - prev);
    }
    BoundaryProblem p;
    p.geometry = geometry;
    p.bc_at_zero = bc;
    p.scheme = scheme;
    p.L = x;
    const double q_low = std::min(0.0, eval_q0(spec, 0.0)) - spec.perturbation.sup_bound();
    double h = 0.1 / std::sqrt(std::max(1.0, lambda_max - q_low));
    const double omega = spec.perturbation.max_frequency();
    if (omega > 0.0) h = std::min(h, 2.0 * std::numbers::pi / omega / 16.0);
    h = std::min(h, p.L / 200.0);
    p.h = h;
    return p;
}

Discretization::Discretization(const BoundaryProblem& problem, const PotentialSpec& spec) : problem_(problem) {
    spec.validate();
    if (!(problem.L > spec.b) || !(problem.h > 0.0) || !(problem.h < problem.L)) {
        throw Error(ErrorKind::Config, "boundary problem needs L > b and 0 < h < L");
    }
    if (problem.geometry == Geometry::FullLine) {
        const long N = std::max<long>(4, std::lround(2.0 * problem.L / problem.h));
        h_ = 2.0 * problem.L / static_cast<double>(N);
        x_.resize(static_cast<std::size_t>(N - 1));
        for (long i = 1; i < N; ++i) x_[static_cast<std::size_t>(i - 1)] = -problem.L + static_cast<double>(i) * h_;
        ghost_sign_ = 0.0;
    } else {
        // Staggered grid x_i = (i + 1/2) h; the condition at 0 enters through the ghost node.
        const long M = std::max<long>(4, std::lround(problem.L / problem.h - 0.5));
        h_ = problem.L / (static_cast<double>(M) + 0.5);
        x_.resize(static_cast<std::size_t>(M));
        for (long i = 0; i < M; ++i) x_[static_cast<std::size_t>(i)] = (static_cast<double>(i) + 0.5) * h_;
        ghost_sign_ = problem.bc_at_zero == BoundaryCondition::Neumann ? 1.0 : -1.0;
    }
    const auto breaks = spec.perturbation.breakpoints();
    const auto q = [&](double s) { return eval_q(spec, s); };
    q_.resize(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
        const double lo = x_[i] - 0.5 * h_;
        const double hi = x_[i] + 0.5 * h_;
        const bool straddles = std::any_of(breaks.begin(), breaks.end(), [&](double p) { return p > lo && p < hi; });
        // Cells cut by a jump get the cell average so the stencil sees the right mass.
        q_[i] = straddles ? quad::integrate_piecewise(q, lo, hi, breaks, 1e-12) / h_ : q(x_[i]);
    }
    q_min_ = *std::min_element(q_.begin(), q_.end());
    lambda_limit_ = eval_q0(spec, problem.L) - kMargin;
}

long Discretization::count(double lambda) const {
    if (!(lambda < lambda_limit_)) {
        throw Error(ErrorKind::TruncationMargin, "lambda must stay below q0(L) - 25; enlarge L");
    }
    const double inv_h2 = 1.0 / (h_ * h_);
    const std::size_t n = q_.size();
    long negatives = 0;
    constexpr double tiny = 1e-300;
    if (problem_.scheme == Scheme::FD2) {
        double d = 2.0 * inv_h2 + q_[0] - lambda - ghost_sign_ * inv_h2;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) d = 2.0 * inv_h2 + q_[i] - lambda - inv_h2 * inv_h2 / d;
            if (d == 0.0) d = -tiny;
            if (d < 0.0) ++negatives;
        }
        return negatives;
    }
    // Numerov: M(l) = T + B (Q - l). The symmetrized pivots use the products of
    // the two off-diagonals, which are positive while h^2 (q - l) / 12 < 1.
    const double h2 = h_ * h_;
    const auto off = [&](std::size_t i) { return -inv_h2 + (q_[i] - lambda) / 12.0; };
    double d = 2.0 * inv_h2 + (10.0 / 12.0) * (q_[0] - lambda);
    if (ghost_sign_ != 0.0) d += ghost_sign_ * off(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (h2 * (q_[i] - lambda) / 12.0 >= 1.0) {
            throw Error(ErrorKind::Precondition, "Numerov step too large for the potential range; reduce h");
        }
        if (i > 0) d = 2.0 * inv_h2 + (10.0 / 12.0) * (q_[i] - lambda) - off(i) * off(i - 1) / d;
        if (d == 0.0) d = -tiny;
        if (d < 0.0) ++negatives;
    }
    return negatives;
}

long sturm_count(const BoundaryProblem& problem, const PotentialSpec& spec, double lambda) {
    return Discretization(problem, spec).count(lambda);
}

namespace {

// Fixed integration layout for one eigenvalue: endpoints where the solution
// has decayed, the matching point and the Pruefer scale.
struct ShootingLayout {
    double x_start = 0.0;
    double x_end = 0.0;
    double c = 0.0;
    double S = 1.0;
    double theta_start = 0.0;
    std::vector<double> breaks;
};

ShootingLayout make_layout(const BoundaryProblem& problem, const PotentialSpec& spec, double lambda) {
    ShootingLayout lay;
    const bool full = problem.geometry == Geometry::FullLine;
    const double a = full ? -problem.L : 0.0;
    const double b = problem.L;
    constexpr int kScan = 4000;
    const double dx = (b - a) / kScan;
    std::vector<double> qs(kScan + 1);
    for (int i = 0; i <= kScan; ++i) qs[static_cast<std::size_t>(i)] = eval_q(spec, a + i * dx);
    int first = -1;
    int last = -1;
    int argmin = 0;
    for (int i = 0; i <= kScan; ++i) {
        if (qs[static_cast<std::size_t>(i)] < lambda) {
            if (first < 0) first = i;
            last = i;
        }
        if (qs[static_cast<std::size_t>(i)] < qs[static_cast<std::size_t>(argmin)]) argmin = i;
    }
    const double q_min = qs[static_cast<std::size_t>(argmin)];
    lay.S = std::sqrt(std::max(lambda - q_min, 1.0));
    if (first < 0) {
        lay.c = a + argmin * dx;
        first = last = argmin;
    } else {
        lay.c = a + 0.5 * (first + last) * dx;
        if (eval_q(spec, lay.c) >= lambda) lay.c = a + argmin * dx;
    }
    if (!full) lay.c = std::max(lay.c, 0.5 * dx);
    lay.x_end = b;
    double decay = 0.0;
    for (int i = last; i < kScan; ++i) {
        decay += std::sqrt(std::max(0.0, qs[static_cast<std::size_t>(i)] - lambda)) * dx;
        if (decay >= kDecayTarget) {
            lay.x_end = a + (i + 1) * dx;
            break;
        }
    }
    lay.x_start = a;
    if (full) {
        decay = 0.0;
        for (int i = first; i > 0; --i) {
            decay += std::sqrt(std::max(0.0, qs[static_cast<std::size_t>(i)] - lambda)) * dx;
            if (decay >= kDecayTarget) {
                lay.x_start = a + (i - 1) * dx;
                break;
            }
        }
        lay.theta_start = 0.0;
    } else {
        lay.theta_start = problem.bc_at_zero == BoundaryCondition::Neumann ? 0.5 * std::numbers::pi : 0.0;
    }
    lay.breaks = potential_breaks(spec);
    return lay;
}

constexpr double kPhaseAbsTol = 1e-15;
constexpr double kPhaseRelTol = 1e-15;

double phase_at(const PotentialSpec& spec, const ShootingLayout& lay, double lambda, double from, double to,
                double theta0) {
    const double S = lay.S;
    const auto rhs = [&](double x, const detail::OdeState<1>& s, detail::OdeState<1>& ds) {
        const double sn = std::sin(s[0]);
        const double cs = std::cos(s[0]);
        ds[0] = S * cs * cs + (lambda - eval_q(spec, x)) / S * sn * sn;
    };
    detail::OdeState<1> st{theta0};
    detail::integrate_split<1>(rhs, st, from, to, lay.breaks, kPhaseAbsTol, kPhaseRelTol);
    return st[0];
}

double mismatch(const PotentialSpec& spec, const ShootingLayout& lay, double lambda, int n) {
    const double left = phase_at(spec, lay, lambda, lay.x_start, lay.c, lay.theta_start);
    const double right = phase_at(spec, lay, lambda, lay.x_end, lay.c, std::numbers::pi);
    return left - right - (n - 1) * std::numbers::pi;
}

struct Polished {
    double lambda = 0.0;
    double est_error = 0.0;
};

Polished polish(const BoundaryProblem& problem, const PotentialSpec& spec, double guess, int n, double tol) {
    const auto lay = make_layout(problem, spec, guess);
    const auto F = [&](double l) { return mismatch(spec, lay, l, n); };
    double delta = std::max(10.0 * tol, 1e-7 * (1.0 + std::abs(guess)));
    double lo = guess - delta;
    double hi = guess + delta;
    double flo = F(lo);
    double fhi = F(hi);
    for (int it = 0; it < 60 && !(flo <= 0.0 && fhi >= 0.0); ++it) {
        delta *= 4.0;
        if (flo > 0.0) {
            hi = lo;
            fhi = flo;
            lo = guess - delta;
            flo = F(lo);
        } else {
            lo = hi;
            flo = fhi;
            hi = guess + delta;
            fhi = F(hi);
        }
    }
    if (!(flo <= 0.0 && fhi >= 0.0)) {
        throw Error(ErrorKind::MissedIndex, "phase shooting could not bracket eigenvalue " + std::to_string(n));
    }
    if (flo == 0.0) return {lo, 0.0};
    if (fhi == 0.0) return {hi, 0.0};
    const double width_target = std::max(0.1 * tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(guess));
    const auto stop = [&](double a, double b) { return std::abs(b - a) <= width_target; };
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(F, lo, hi, flo, fhi, stop, max_iter);
    const double root = 0.5 * (a + b);
    const double fa = F(a);
    const double fb = F(b);
    const double slope = b > a ? (fb - fa) / (b - a) : 0.0;
    const double froot = F(root);
    double est = std::abs(b - a);
    if (slope > 0.0) est = std::max(est, std::abs(froot) / slope);
    return {root, est};
}

double discrete_eigenvalue(const Discretization& disc, int n, double tol) {
    double lo = disc.q_min() - 1.0;
    double hi = disc.lambda_limit() * (1.0 - 1e-15);
    if (disc.count(hi) < n) {
        throw Error(ErrorKind::TruncationMargin,
                    "eigenvalue " + std::to_string(n) + " lies above q0(L) - 25; enlarge L");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (disc.count(mid) >= n ? hi : lo) = mid;
    }
    if (disc.count(hi) - disc.count(lo) != 1) {
        throw Error(ErrorKind::MissedIndex, "Sturm counts inconsistent near eigenvalue " + std::to_string(n));
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Spectrum solve_range(const BoundaryProblem& problem, const PotentialSpec& spec, int n_lo, int n_hi,
                     const SolveOptions& options) {
    if (n_lo < 1 || n_hi < n_lo) {
        throw Error(ErrorKind::Config, "index range must satisfy 1 <= n_lo <= n_hi");
    }
    if (!(options.tol >= 1e-10)) {
        throw Error(ErrorKind::Config, "tolerance must be at least 1e-10");
    }
    const Discretization disc(problem, spec);
    Spectrum out;
    out.problem = problem;
    const int count = n_hi - n_lo + 1;
    out.entries.resize(static_cast<std::size_t>(count));

    const auto work = [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            const int n = n_lo + k;
            auto& e = out.entries[static_cast<std::size_t>(k)];
            e.n = n;
            const double width = std::max(options.tol, 1e-12 * (1.0 + std::abs(disc.q_min())));
            e.discrete_lambda = discrete_eigenvalue(disc, n, width);
            e.lambda = e.discrete_lambda;
            e.est_error = width;
            if (options.polish) {
                const auto p = polish(problem, spec, e.discrete_lambda, n, options.tol);
                e.lambda = p.lambda;
                e.est_error = std::max(width, p.est_error);
            }
            if (options.classify) {
                const auto ang = boundary_angle(problem, spec, e.lambda, n);
                e.phi = ang.phi;
                e.type = ang.type;
            }
        }
    };

    const int threads = std::clamp(options.threads, 1, count);
    if (threads == 1) {
        work(0, count);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            const int begin = count * t / threads;
            const int end = count * (t + 1) / threads;
            pool.emplace_back([&, t, begin, end] {
                try {
                    work(begin, end);
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    for (std::size_t i = 1; i < out.entries.size(); ++i) {
        const auto& a = out.entries[i - 1];
        const auto& b = out.entries[i];
        if (!(b.lambda - b.est_error > a.lambda + a.est_error)) {
            throw Error(ErrorKind::MissedIndex, "eigenvalues " + std::to_string(a.n) + " and " + std::to_string(b.n) +
                                                    " are not separated by their error bounds");
        }
    }
    return out;
}

Spectrum solve_auto(const PotentialSpec& spec, int n_lo, int n_hi, Geometry geometry, BoundaryCondition bc,
                    const SolveOptions& options) {
    const double top = lambda_upper_estimate(spec, n_hi, geometry);
    const auto problem = BoundaryProblem::automatic(spec, top, geometry, bc);
    return solve_range(problem, spec, n_lo, n_hi, options);
}

std::vector<EigenfunctionSample> eigenfunction(const BoundaryProblem& problem, const PotentialSpec& spec, double lambda,
                                               int n, const std::vector<double>& xs) {
    const auto lay = make_layout(problem, spec, lambda);
    const double S = lay.S;
    // State: theta, log rho, int rho^2 sin^2 theta.
    const auto rhs = [&](double x, const detail::OdeState<3>& s, detail::OdeState<3>& ds) {
        const double sn = std::sin(s[0]);
        const double cs = std::cos(s[0]);
        const double w = (lambda - eval_q(spec, x)) / S;
        ds[0] = S * cs * cs + w * sn * sn;
        ds[1] = (S - w) * sn * cs;
        ds[2] = std::exp(2.0 * s[1]) * sn * sn;
    };
    struct Raw {
        double theta, log_rho;
        bool right;
    };
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<Raw> raw(xs.size(), Raw{0.0, -std::numeric_limits<double>::infinity(), false});

    constexpr double kAbs = 1e-11;
    constexpr double kRel = 1e-11;
    detail::OdeState<3> left{lay.theta_start, 0.0, 0.0};
    double pos = lay.x_start;
    for (std::size_t idx : order) {
        const double x = xs[idx];
        if (x < lay.x_start || x > lay.c) continue;
        detail::integrate_split<3>(rhs, left, pos, x, lay.breaks, kAbs, kRel);
        pos = x;
        raw[idx] = {left[0], left[1], false};
    }
    detail::integrate_split<3>(rhs, left, pos, lay.c, lay.breaks, kAbs, kRel);

    detail::OdeState<3> right{std::numbers::pi, 0.0, 0.0};
    pos = lay.x_end;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const double x = xs[*it];
        if (x > lay.x_end || x <= lay.c) continue;
        detail::integrate_split<3>(rhs, right, pos, x, lay.breaks, kAbs, kRel);
        pos = x;
        raw[*it] = {right[0], right[1], true};
    }
    detail::integrate_split<3>(rhs, right, pos, lay.c, lay.breaks, kAbs, kRel);

    // Scale the right branch so y and y' match at c.
    const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
    const double log_k = left[1] - right[1];
    const double norm2 = left[2] + std::exp(2.0 * log_k) * std::abs(right[2]);
    const double log_norm = 0.5 * std::log(norm2);

    std::vector<EigenfunctionSample> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i].x = xs[i];
        const auto& r = raw[i];
        if (!std::isfinite(r.log_rho)) continue;
        const double amp = std::exp(r.log_rho + (r.right ? log_k : 0.0) - log_norm) * (r.right ? sign : 1.0);
        out[i].y = amp * std::sin(r.theta);
        out[i].dy = amp * S * std::cos(r.theta);
    }
    return out;
}

BoundaryAngle boundary_angle(const BoundaryProblem& problem, const PotentialSpec& spec, double lambda, int n) {
    const auto s = eigenfunction(problem, spec, lambda, n, {0.0}).front();
    const double mu = lambda - eval_q(spec, spec.b);
    const double scale = mu > 0.0 ? std::sqrt(mu) : 1.0;
    const double u = s.y;
    const double v = s.dy / scale;
    if (std::abs(u) < 1e-12 && std::abs(v) < 1e-12) {
        throw Error(ErrorKind::DegenerateEigenfunction, "eigenfunction and derivative both vanish at 0");
    }
    double phi = std::atan2(v, u);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    // tiny negative angles would otherwise print as 2pi - 1e-12
    if (phi >= 2.0 * std::numbers::pi - 1e-9) phi = 0.0;
    BoundaryAngle out;
    out.phi = phi;
    if (mu > 0.0) out.type = std::abs(std::sin(phi)) >= std::abs(std::cos(phi)) ? TypeTag::D : TypeTag::N;
    return out;
}

}  // namespace anharmonic
