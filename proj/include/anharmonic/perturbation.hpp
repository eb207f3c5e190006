#pragma once

#include <numbers>
#include <utility>
#include <variant>
#include <vector>

namespace anharmonic {

/// Sum_{j=1}^{J} 2^{-j tau} cos(2^j x) on [lo, hi], zero outside.
struct TruncatedWeierstrass {
    double tau = 0.5;
    int J = 6;
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
};

/// amplitude * cos(omega x) on [lo, hi], zero outside.
struct WindowedCosine {
    double amplitude = 1.0;
    double omega = 1.0;
    double lo = -std::numbers::pi;
    double hi = std::numbers::pi;
};

/// height on [lo, hi], zero outside.
struct Step {
    double height = 1.0;
    double lo = -1.0;
    double hi = 1.0;
};

/// Linear interpolation through (x_i, v_i) on [x_0, x_last], zero outside.
struct SampledTable {
    std::vector<double> x;
    std::vector<double> v;
};

using PerturbationPiece = std::variant<TruncatedWeierstrass, WindowedCosine, Step, SampledTable>;

enum class TransformMethod {
    Auto,        // closed forms where available, Filon / Gauss-Kronrod otherwise
    Quadrature,  // adaptive Gauss-Kronrod on every piece, for cross-checks
};

/// Compactly supported, piecewise Hoelder continuous V(x), represented as a sum
/// of built-in pieces each living on its own closed window. An empty piece list
/// is the zero perturbation.
class Perturbation {
public:
    Perturbation() = default;
    explicit Perturbation(std::vector<PerturbationPiece> pieces);

    static Perturbation zero() { return {}; }

    [[nodiscard]] double operator()(double x) const;

    [[nodiscard]] const std::vector<PerturbationPiece>& pieces() const noexcept { return pieces_; }
    [[nodiscard]] bool is_zero() const noexcept { return pieces_.empty(); }

    /// Sorted, de-duplicated points where some piece starts, ends or kinks.
    [[nodiscard]] std::vector<double> breakpoints() const;

    /// Smallest interval containing every window; {0, 0} for the zero perturbation.
    [[nodiscard]] std::pair<double, double> support() const;

    /// Hoelder exponent: tau for Weierstrass pieces, 1 for everything else.
    [[nodiscard]] double tau() const;

    /// An upper bound for sup |V|.
    [[nodiscard]] double sup_bound() const;

    /// Highest frequency present in any piece (0 if none is oscillatory).
    [[nodiscard]] double max_frequency() const;

    /// Sup-norm of the Weierstrass terms dropped by truncation at J,
    /// sum_{j>J} 2^{-j tau} = 2^{-J tau} / (2^tau - 1), summed over pieces.
    [[nodiscard]] double truncation_tail_bound() const;

    [[nodiscard]] double integral() const;

    /// int V(s) cos(omega s) ds over the real line.
    [[nodiscard]] double cos_transform(double omega, TransformMethod method = TransformMethod::Auto) const;
    /// int V(s) sin(omega s) ds over the real line.
    [[nodiscard]] double sin_transform(double omega, TransformMethod method = TransformMethod::Auto) const;

    /// V restricted to [lo, hi] (zero elsewhere).
    [[nodiscard]] Perturbation restricted(double lo, double hi) const;
    /// x -> V(-x).
    [[nodiscard]] Perturbation reflected() const;
    /// x -> V(|x|), built from the part of V on [0, inf).
    [[nodiscard]] Perturbation even_extension() const;

private:
    std::vector<PerturbationPiece> pieces_;
};

double evaluate(const PerturbationPiece& piece, double x);

}  // namespace anharmonic
