#pragma once

// End-to-end verification scenarios. Each acceptance criterion is one function
// returning its checks and a printable table; tolerances live in scenarios.cpp.

#include <string>
#include <vector>

namespace anharmonic::scenarios {

struct Check {
    std::string label;
    bool passed = true;
    std::string detail;
    /// Informational lines are printed but never fail the scenario.
    bool informational = false;
};

struct ScenarioResult {
    int criterion = 0;
    std::string title;
    std::vector<std::string> table;  // CSV lines, header first
    std::vector<Check> checks;
    double seconds = 0.0;

    [[nodiscard]] bool passed() const;
    /// One-line summary of the failing (or all) gating checks.
    [[nodiscard]] std::string summary() const;
};

struct Options {
    int threads = 1;
};

inline constexpr int kCriterionCount = 10;

/// Runs acceptance criterion id (1-based). Throws Error(Config) for unknown ids.
[[nodiscard]] ScenarioResult run_criterion(int id, const Options& options = {});

/// Third-term table for the Weierstrass subsequence n_k = 2^(2k-3), k = 3..6.
[[nodiscard]] ScenarioResult weierstrass_example(double tau, int J, const Options& options = {});
/// Residual decay of the implicit relation for (|x| + c)^alpha.
[[nodiscard]] ScenarioResult shifted_example(double c, double alpha, const Options& options = {});
/// Action coefficients for (x^2 + c)^2 plus the residual decay at oracle eigenvalues.
[[nodiscard]] ScenarioResult quartic_example(double c, const Options& options = {});
/// Half-line expansions and the interlacing of the type-tagged full-line spectrum.
[[nodiscard]] ScenarioResult halfline_example(const Options& options = {});

}  // namespace anharmonic::scenarios
