#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anharmonic/eigensolve.hpp"
#include "anharmonic/perturbation.hpp"
#include "anharmonic/potential.hpp"

namespace anharmonic {

/// Printed: coefficients exactly as displayed in the source formulas.
/// Rederived: the same expansions with coefficients recomputed from the
/// quantization condition; see README "Two coefficient sets".
enum class ExpansionForm { Printed, Rederived };

std::string_view to_string(ExpansionForm f) noexcept;

struct ExpansionConstants {
    double C0 = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double alpha = 2.0;
};

/// C0 = (1/pi) int V, C1 = 4 G(3/2) G(1/a) / (a pi G(3/2 + 1/a)),
/// C2 = (a - 1) cot(pi/a) / (12 pi (2 + a) C1). At a = 1 the finite limit
/// (a - 1) cot(pi/a) -> -1/pi is used; a = 1/k (k >= 2) is a pole.
[[nodiscard]] ExpansionConstants constants(double alpha, const Perturbation& V);

struct ExpansionRow {
    int n = 0;
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
    double term4 = 0.0;
    double predicted = 0.0;
    std::optional<double> oracle;
    std::optional<double> residual;

    void set_oracle(double value) {
        oracle = value;
        residual = value - predicted;
    }
};

struct ExpansionReport {
    double alpha = 2.0;
    ExpansionForm form = ExpansionForm::Rederived;
    std::string predictor = "expansion";
    std::vector<ExpansionRow> rows;
};

/// Four-term large-n expansion of lambda_n on the full line, evaluated at m = 2n - 1.
[[nodiscard]] ExpansionRow eigenvalue_expansion(const ExpansionConstants& k, const Perturbation& V, int n,
                                                ExpansionForm form = ExpansionForm::Rederived);

/// Same expansion with an arbitrary odd-like argument m (used by the half line).
[[nodiscard]] ExpansionRow expansion_at(const ExpansionConstants& k, const Perturbation& V, double m, int parity_index,
                                        ExpansionForm form);

/// Large-lambda tail term d2; zero for alpha <= 2.
[[nodiscard]] double d2_asymptotic(double alpha, double lambda, ExpansionForm form = ExpansionForm::Rederived);

struct QuantizationContext {
    double lambda = 0.0;
    double mu = 0.0;
    double Q = 0.0;
    double correction = 0.0;
    double d2 = 0.0;
    TypeTag type = TypeTag::D;
    double residual = 0.0;
};

/// Solves the D-type (pi/4) or N-type (3pi/4) quantization relation for its
/// n-th root. The oscillatory correction uses frequency 2 sqrt(mu).
[[nodiscard]] QuantizationContext quantization_solve(const PotentialSpec& spec, int n, TypeTag type,
                                                     ExpansionForm form = ExpansionForm::Rederived);

/// Right side minus n pi at lambda. Increasing once mu exceeds |mean_integral| / (4b).
[[nodiscard]] double quantization_relation(const PotentialSpec& spec, int n, TypeTag type, double lambda,
                                           ExpansionForm form = ExpansionForm::Rederived);

/// Merged sequence nu_{2n-1} = N-type root n, nu_{2n} = D-type root n.
[[nodiscard]] QuantizationContext merged_root(const PotentialSpec& spec, int m,
                                              ExpansionForm form = ExpansionForm::Rederived);

/// (pi/4)(2n - 1) minus the implicit-relation right side at lambda, remainders dropped.
[[nodiscard]] double thm2_residual(const PotentialSpec& spec, int n, double lambda,
                                   ExpansionForm form = ExpansionForm::Rederived);

/// Half-line expansion for Dirichlet or Neumann at 0.
[[nodiscard]] ExpansionRow halfline_expansion(double alpha, const Perturbation& V, int n, BoundaryCondition bc,
                                              ExpansionForm form = ExpansionForm::Rederived);

/// (2/pi)(Q(b, lambda) + b sqrt(lambda - q(b))).
[[nodiscard]] double counting_asymptotic(const PotentialSpec& spec, double lambda);

/// (1/sqrt(pi)) G((a+1)/a) t^{-(a+2)/(2a)} - (c/sqrt(pi)) t^{-1/2}.
[[nodiscard]] double heat_trace_leading(double alpha, double t, double c_shift = 0.0);

/// Energy cut-off Lambda with exp(-t Lambda) = eps.
[[nodiscard]] double heat_trace_cutoff(double t, double eps = 1e-8);

struct HeatTrace {
    double partial_sum = 0.0;
    double tail = 0.0;
    double total = 0.0;
    int terms = 0;
};

/// sum_n exp(-t lambda_n) over the supplied eigenvalues plus the tail
/// int_{Lambda}^{inf} exp(-t l) dN_asym(l) beyond the last one.
[[nodiscard]] HeatTrace heat_trace_numeric(const PotentialSpec& spec, std::span<const double> eigenvalues, double t);

struct QuarticCoefficients {
    std::array<double, 7> a{};
    double condition_number = 0.0;
    double max_fit_residual = 0.0;
};

/// a_0..a_6 of the lambda^{(3-k)/4} expansion for q0 = (x^2 + c)^2 with
/// support radius b, by least squares on exact action values over [1e4, 1e8].
[[nodiscard]] QuarticCoefficients quartic_Q_coefficients(double c, double b,
                                                         ExpansionForm form = ExpansionForm::Rederived,
                                                         const Perturbation& V = {});

/// (pi/4)(2n - 1) - sum_k a_k lambda^{(3-k)/4} (+ oscillatory term for nonzero V).
[[nodiscard]] double quartic_residual(const QuarticCoefficients& coeffs, const PotentialSpec& spec, int n,
                                      double lambda, ExpansionForm form = ExpansionForm::Rederived);

}  // namespace anharmonic
