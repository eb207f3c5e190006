#pragma once

#include <string_view>
#include <vector>

#include "anharmonic/potential.hpp"

namespace anharmonic {

enum class Geometry { FullLine, HalfLine };
enum class BoundaryCondition { Dirichlet, Neumann };
enum class Scheme { FD2, Numerov };
enum class TypeTag { D, N, Unknown };

std::string_view to_string(BoundaryCondition bc) noexcept;
std::string_view to_string(Scheme s) noexcept;
std::string_view to_string(TypeTag t) noexcept;
std::string_view to_string(Geometry g) noexcept;

/// Truncated problem: Dirichlet at x = +-L (full line) or at x = L with the
/// chosen condition at 0 (half line).
struct BoundaryProblem {
    Geometry geometry = Geometry::FullLine;
    BoundaryCondition bc_at_zero = BoundaryCondition::Dirichlet;
    double L = 10.0;
    double h = 1e-3;
    Scheme scheme = Scheme::Numerov;

    /// Picks L and h for eigenvalues up to lambda_max: q0(L) >= lambda_max + 25,
    /// at least 20 units of decay exponent beyond the turning point, h resolving
    /// both sqrt(lambda_max) and the perturbation's top frequency.
    static BoundaryProblem automatic(const PotentialSpec& spec, double lambda_max,
                                     Geometry geometry = Geometry::FullLine,
                                     BoundaryCondition bc = BoundaryCondition::Dirichlet,
                                     Scheme scheme = Scheme::Numerov);
};

/// Tridiagonal discretization of -y'' + q y on the problem's grid.
class Discretization {
public:
    Discretization(const BoundaryProblem& problem, const PotentialSpec& spec);

    /// Number of discrete eigenvalues <= lambda.
    [[nodiscard]] long count(double lambda) const;

    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] double step() const noexcept { return h_; }
    [[nodiscard]] double lambda_limit() const noexcept { return lambda_limit_; }
    [[nodiscard]] double q_min() const noexcept { return q_min_; }

private:
    BoundaryProblem problem_;
    std::vector<double> x_;
    std::vector<double> q_;
    double h_ = 0.0;
    double ghost_sign_ = 0.0;  // +1 Neumann, -1 Dirichlet, 0 full line
    double lambda_limit_ = 0.0;
    double q_min_ = 0.0;
};

/// Throws Error(TruncationMargin) unless lambda < q0(L) - 25.
[[nodiscard]] long sturm_count(const BoundaryProblem& problem, const PotentialSpec& spec, double lambda);

struct SpectrumEntry {
    int n = 0;
    double lambda = 0.0;
    TypeTag type = TypeTag::Unknown;
    double phi = 0.0;
    double est_error = 0.0;
    double discrete_lambda = 0.0;
};

struct Spectrum {
    BoundaryProblem problem;
    std::vector<SpectrumEntry> entries;
};

struct SolveOptions {
    double tol = 1e-8;
    bool polish = true;
    bool classify = true;
    int threads = 1;
};

[[nodiscard]] Spectrum solve_range(const BoundaryProblem& problem, const PotentialSpec& spec, int n_lo, int n_hi,
                                   const SolveOptions& options = {});

/// Convenience wrapper: automatic problem sized for index n_hi.
[[nodiscard]] Spectrum solve_auto(const PotentialSpec& spec, int n_lo, int n_hi, Geometry geometry = Geometry::FullLine,
                                  BoundaryCondition bc = BoundaryCondition::Dirichlet, const SolveOptions& options = {});

/// Upper estimate of lambda_n for sizing problems (WKB count with margin).
[[nodiscard]] double lambda_upper_estimate(const PotentialSpec& spec, int n, Geometry geometry);

struct EigenfunctionSample {
    double x = 0.0;
    double y = 0.0;
    double dy = 0.0;
};

/// L2-normalized eigenfunction of index n at eigenvalue lambda, positive in the
/// left tail (full line) or near 0 (half line), sampled at the given points.
[[nodiscard]] std::vector<EigenfunctionSample> eigenfunction(const BoundaryProblem& problem, const PotentialSpec& spec,
                                                             double lambda, int n, const std::vector<double>& xs);

struct BoundaryAngle {
    double phi = 0.0;
    TypeTag type = TypeTag::Unknown;
};

/// phi = atan2(y'(0)/sqrt(lambda - q(b)), y(0)) mapped to [0, 2pi). When
/// lambda <= q(b) the scale sqrt(...) is replaced by 1 and the tag is Unknown.
[[nodiscard]] BoundaryAngle boundary_angle(const BoundaryProblem& problem, const PotentialSpec& spec, double lambda,
                                           int n);

}  // namespace anharmonic
