#pragma once

#include <variant>
#include <vector>

#include "anharmonic/perturbation.hpp"

namespace anharmonic {

struct PowerTerm {
    double a = 1.0;
    double alpha = 2.0;
};

/// q0(x) = sum_j a_j |x|^alpha_j
struct PlainSum {};
/// q0(x) = (|x| + c)^alpha; c < 0 needs an integer alpha.
struct ShiftedPower {
    double c = 0.0;
    double alpha = 2.0;
};
/// q0(x) = (x^2 + c)^2
struct Quartic {
    double c = 0.0;
};

using Composite = std::variant<PlainSum, ShiftedPower, Quartic>;

/// q(x) = q0(x) + V(x) with supp V inside (-b, b).
struct PotentialSpec {
    std::vector<PowerTerm> terms;
    Composite composite = PlainSum{};
    Perturbation perturbation;
    double b = 1.0;

    /// Throws Error(Config) on malformed input.
    void validate() const;

    static PotentialSpec power(double alpha, Perturbation V = {}, double b = 1.0);
    static PotentialSpec shifted(double c, double alpha, Perturbation V = {}, double b = 1.0);
    static PotentialSpec quartic(double c, Perturbation V = {}, double b = 1.0);
};

[[nodiscard]] double eval_q0(const PotentialSpec& spec, double x);
/// d q0 / dx for x > 0.
[[nodiscard]] double eval_q0_prime(const PotentialSpec& spec, double x);
[[nodiscard]] double eval_q(const PotentialSpec& spec, double x);

/// Growth exponent of q0 at infinity.
[[nodiscard]] double leading_alpha(const PotentialSpec& spec);

/// Smallest x* >= 0 with q0' > 0 on (x*, inf).
[[nodiscard]] double monotone_from(const PotentialSpec& spec);

/// Unique a > b with q0(a) = lambda.
[[nodiscard]] double turning_point(const PotentialSpec& spec, double lambda);

/// Q(x0, lambda) = int_{x0}^{a(lambda)} sqrt(lambda - q0(t)) dt for x0 >= b.
[[nodiscard]] double action_Q(const PotentialSpec& spec, double x0, double lambda);

/// Three-term expansion of Q(b, lambda) for q0 = |x|^alpha.
[[nodiscard]] double Q_power_expansion(double b, double lambda, double alpha);

/// int_{-b}^{b} (q(s) - q(b)) ds.
[[nodiscard]] double mean_integral(const PotentialSpec& spec);

}  // namespace anharmonic
