#include "anharmonic/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "anharmonic/errors.hpp"
#include "anharmonic/quadrature.hpp"

namespace anharmonic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

// int_lo^hi cos(k s) ds
double cos_window(double k, double lo, double hi) {
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    return (hi - lo) * std::cos(k * mid) * sinc(k * half);
}

// int_lo^hi sin(k s) ds
double sin_window(double k, double lo, double hi) {
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    return (hi - lo) * std::sin(k * mid) * sinc(k * half);
}

// int_lo^hi cos(a s) K(omega s) ds for K = cos or sin.
double cos_product(double a, double omega, double lo, double hi, quad::Kernel kernel) {
    if (kernel == quad::Kernel::Cos) {
        return 0.5 * (cos_window(a - omega, lo, hi) + cos_window(a + omega, lo, hi));
    }
    return 0.5 * (sin_window(omega + a, lo, hi) + sin_window(omega - a, lo, hi));
}

std::pair<double, double> window_of(const PerturbationPiece& piece) {
    return std::visit(overloaded{
                          [](const TruncatedWeierstrass& w) { return std::pair{w.lo, w.hi}; },
                          [](const WindowedCosine& c) { return std::pair{c.lo, c.hi}; },
                          [](const Step& s) { return std::pair{s.lo, s.hi}; },
                          [](const SampledTable& t) { return std::pair{t.x.front(), t.x.back()}; },
                      },
                      piece);
}

void validate(const PerturbationPiece& piece) {
    const auto [lo, hi] = window_of(piece);
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::Config, "perturbation window must be a finite interval with lo < hi");
    }
    std::visit(overloaded{
                   [](const TruncatedWeierstrass& w) {
                       if (!(w.tau > 0.0 && w.tau <= 1.0)) {
                           throw Error(ErrorKind::Config, "Weierstrass exponent tau must lie in (0, 1]");
                       }
                       if (w.J < 1 || w.J > 60) {
                           throw Error(ErrorKind::Config, "Weierstrass truncation J must lie in [1, 60]");
                       }
                   },
                   [](const WindowedCosine& c) {
                       if (!std::isfinite(c.amplitude) || !std::isfinite(c.omega)) {
                           throw Error(ErrorKind::Config, "cosine piece needs finite amplitude and frequency");
                       }
                   },
                   [](const Step& s) {
                       if (!std::isfinite(s.height)) {
                           throw Error(ErrorKind::Config, "step height must be finite");
                       }
                   },
                   [](const SampledTable& t) {
                       if (t.x.size() < 2 || t.x.size() != t.v.size()) {
                           throw Error(ErrorKind::Config, "sampled table needs >= 2 matching abscissae and values");
                       }
                       for (std::size_t i = 1; i < t.x.size(); ++i) {
                           if (!(t.x[i] > t.x[i - 1])) {
                               throw Error(ErrorKind::Config, "sampled table abscissae must increase strictly");
                           }
                       }
                   },
               },
               piece);
}

double weierstrass_value(const TruncatedWeierstrass& w, double x) {
    const double ratio = std::exp2(-w.tau);
    double sum = 0.0;
    double freq = 1.0;
    double coef = 1.0;
    for (int j = 1; j <= w.J; ++j) {
        freq *= 2.0;
        coef *= ratio;
        sum += coef * std::cos(freq * x);
    }
    return sum;
}

double table_value(const SampledTable& t, double x) {
    const auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
    if (it == t.x.begin()) return t.v.front();
    if (it == t.x.end()) return t.v.back();
    const std::size_t i = static_cast<std::size_t>(it - t.x.begin());
    const double w = (x - t.x[i - 1]) / (t.x[i] - t.x[i - 1]);
    return (1.0 - w) * t.v[i - 1] + w * t.v[i];
}

std::vector<double> interior_nodes(const PerturbationPiece& piece) {
    if (const auto* t = std::get_if<SampledTable>(&piece)) {
        return t->x;
    }
    const auto [lo, hi] = window_of(piece);
    return {lo, hi};
}

// Generic path: adaptive Gauss-Kronrod on the product, chopped so that no
// chunk holds more than a few periods.
double transform_by_quadrature(const PerturbationPiece& piece, double omega, quad::Kernel kernel) {
    const auto [lo, hi] = window_of(piece);
    const auto nodes = interior_nodes(piece);
    double top = std::abs(omega);
    if (const auto* w = std::get_if<TruncatedWeierstrass>(&piece)) {
        top += std::ldexp(1.0, w->J);
    } else if (const auto* c = std::get_if<WindowedCosine>(&piece)) {
        top += std::abs(c->omega);
    }
    // Equal chunks of at most two periods; a leftover sliver would stall the adaptive rule.
    const int chunks = top > 0.0 ? std::max(1, static_cast<int>(std::ceil((hi - lo) * top / (4.0 * std::numbers::pi)))) : 1;
    std::vector<double> cuts = nodes;
    for (int i = 1; i < chunks; ++i) cuts.push_back(lo + (hi - lo) * i / chunks);
    const auto product = [&](double x) {
        const double k = kernel == quad::Kernel::Cos ? std::cos(omega * x) : std::sin(omega * x);
        return evaluate(piece, x) * k;
    };
    return quad::integrate_piecewise(product, lo, hi, cuts, 1e-12);
}

double transform_piece(const PerturbationPiece& piece, double omega, quad::Kernel kernel, TransformMethod method) {
    if (method == TransformMethod::Quadrature) {
        return transform_by_quadrature(piece, omega, kernel);
    }
    return std::visit(
        overloaded{
            [&](const TruncatedWeierstrass& w) {
                double sum = 0.0;
                double freq = 1.0;
                for (int j = 1; j <= w.J; ++j) {
                    freq *= 2.0;
                    sum += std::pow(2.0, -j * w.tau) * cos_product(freq, omega, w.lo, w.hi, kernel);
                }
                return sum;
            },
            [&](const WindowedCosine& c) { return c.amplitude * cos_product(c.omega, omega, c.lo, c.hi, kernel); },
            [&](const Step& s) {
                const auto f = [h = s.height](double) { return h; };
                return quad::oscillatory(f, s.lo, s.hi, omega, kernel);
            },
            [&](const SampledTable& t) {
                const auto f = [&t](double x) { return table_value(t, x); };
                return quad::oscillatory(f, t.x.front(), t.x.back(), omega, kernel, t.x);
            },
        },
        piece);
}

PerturbationPiece clip(const PerturbationPiece& piece, double lo, double hi, bool& empty) {
    const auto [a, b] = window_of(piece);
    const double new_lo = std::max(a, lo);
    const double new_hi = std::min(b, hi);
    empty = !(new_lo < new_hi);
    if (empty) return piece;
    return std::visit(overloaded{
                          [&](TruncatedWeierstrass w) -> PerturbationPiece {
                              w.lo = new_lo;
                              w.hi = new_hi;
                              return w;
                          },
                          [&](WindowedCosine c) -> PerturbationPiece {
                              c.lo = new_lo;
                              c.hi = new_hi;
                              return c;
                          },
                          [&](Step s) -> PerturbationPiece {
                              s.lo = new_lo;
                              s.hi = new_hi;
                              return s;
                          },
                          [&](const SampledTable& t) -> PerturbationPiece {
                              SampledTable out;
                              out.x.push_back(new_lo);
                              out.v.push_back(table_value(t, new_lo));
                              for (std::size_t i = 0; i < t.x.size(); ++i) {
                                  if (t.x[i] > new_lo && t.x[i] < new_hi) {
                                      out.x.push_back(t.x[i]);
                                      out.v.push_back(t.v[i]);
                                  }
                              }
                              out.x.push_back(new_hi);
                              out.v.push_back(table_value(t, new_hi));
                              return out;
                          },
                      },
                      piece);
}

PerturbationPiece reflect(const PerturbationPiece& piece) {
    return std::visit(overloaded{
                          [](TruncatedWeierstrass w) -> PerturbationPiece {
                              std::swap(w.lo, w.hi);
                              w.lo = -w.lo;
                              w.hi = -w.hi;
                              return w;
                          },
                          [](WindowedCosine c) -> PerturbationPiece {
                              std::swap(c.lo, c.hi);
                              c.lo = -c.lo;
                              c.hi = -c.hi;
                              return c;
                          },
                          [](Step s) -> PerturbationPiece {
                              std::swap(s.lo, s.hi);
                              s.lo = -s.lo;
                              s.hi = -s.hi;
                              return s;
                          },
                          [](const SampledTable& t) -> PerturbationPiece {
                              SampledTable out;
                              for (std::size_t i = t.x.size(); i-- > 0;) {
                                  out.x.push_back(-t.x[i]);
                                  out.v.push_back(t.v[i]);
                              }
                              return out;
                          },
                      },
                      piece);
}

}  // namespace

double evaluate(const PerturbationPiece& piece, double x) {
    const auto [lo, hi] = window_of(piece);
    if (x < lo || x > hi) return 0.0;
    return std::visit(overloaded{
                          [x](const TruncatedWeierstrass& w) { return weierstrass_value(w, x); },
                          [x](const WindowedCosine& c) { return c.amplitude * std::cos(c.omega * x); },
                          [](const Step& s) { return s.height; },
                          [x](const SampledTable& t) { return table_value(t, x); },
                      },
                      piece);
}

Perturbation::Perturbation(std::vector<PerturbationPiece> pieces) : pieces_(std::move(pieces)) {
    for (const auto& p : pieces_) validate(p);
}

double Perturbation::operator()(double x) const {
    double sum = 0.0;
    for (const auto& p : pieces_) sum += evaluate(p, x);
    return sum;
}

std::vector<double> Perturbation::breakpoints() const {
    std::vector<double> out;
    for (const auto& p : pieces_) {
        const auto nodes = interior_nodes(p);
        out.insert(out.end(), nodes.begin(), nodes.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<double, double> Perturbation::support() const {
    if (pieces_.empty()) return {0.0, 0.0};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : pieces_) {
        const auto [a, b] = window_of(p);
        lo = std::min(lo, a);
        hi = std::max(hi, b);
    }
    return {lo, hi};
}

double Perturbation::tau() const {
    double t = 1.0;
    for (const auto& p : pieces_) {
        if (const auto* w = std::get_if<TruncatedWeierstrass>(&p)) t = std::min(t, w->tau);
    }
    return t;
}

double Perturbation::sup_bound() const {
    double s = 0.0;
    for (const auto& p : pieces_) {
        s += std::visit(overloaded{
                            [](const TruncatedWeierstrass& w) {
                                double acc = 0.0;
                                for (int j = 1; j <= w.J; ++j) acc += std::pow(2.0, -j * w.tau);
                                return acc;
                            },
                            [](const WindowedCosine& c) { return std::abs(c.amplitude); },
                            [](const Step& st) { return std::abs(st.height); },
                            [](const SampledTable& t) {
                                double m = 0.0;
                                for (double v : t.v) m = std::max(m, std::abs(v));
                                return m;
                            },
                        },
                        p);
    }
    return s;
}

double Perturbation::max_frequency() const {
    double f = 0.0;
    for (const auto& p : pieces_) {
        if (const auto* w = std::get_if<TruncatedWeierstrass>(&p)) f = std::max(f, std::ldexp(1.0, w->J));
        if (const auto* c = std::get_if<WindowedCosine>(&p)) f = std::max(f, std::abs(c->omega));
    }
    return f;
}

double Perturbation::truncation_tail_bound() const {
    double s = 0.0;
    for (const auto& p : pieces_) {
        if (const auto* w = std::get_if<TruncatedWeierstrass>(&p)) {
            s += std::pow(2.0, -w->J * w->tau) / (std::pow(2.0, w->tau) - 1.0);
        }
    }
    return s;
}

double Perturbation::integral() const { return cos_transform(0.0); }

double Perturbation::cos_transform(double omega, TransformMethod method) const {
    double s = 0.0;
    for (const auto& p : pieces_) s += transform_piece(p, omega, quad::Kernel::Cos, method);
    return s;
}

double Perturbation::sin_transform(double omega, TransformMethod method) const {
    double s = 0.0;
    for (const auto& p : pieces_) s += transform_piece(p, omega, quad::Kernel::Sin, method);
    return s;
}

Perturbation Perturbation::restricted(double lo, double hi) const {
    std::vector<PerturbationPiece> out;
    for (const auto& p : pieces_) {
        bool empty = false;
        auto c = clip(p, lo, hi, empty);
        if (!empty) out.push_back(std::move(c));
    }
    return Perturbation(std::move(out));
}

Perturbation Perturbation::reflected() const {
    std::vector<PerturbationPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back(reflect(p));
    return Perturbation(std::move(out));
}

Perturbation Perturbation::even_extension() const {
    const auto right = restricted(0.0, std::numeric_limits<double>::infinity());
    std::vector<PerturbationPiece> out = right.pieces();
    for (const auto& p : right.pieces()) out.push_back(reflect(p));
    return Perturbation(std::move(out));
}

}  // namespace anharmonic
