#pragma once

#include <optional>

#include "exciton/potential.hpp"
#include "exciton/quadrature.hpp"

namespace exciton::variational {

/// Decay lengths of the trial, in effective Bohr radii.
struct TrialParams {
    double k = 1.0; ///< along the tube axis
    double q = 1.0; ///< around the circumference

    /// Throws DomainError unless both are positive and finite.
    void validate() const;
};

/// Full-domain integrals of the un-normalised trial: energy = (K - V) / N.
struct EnergyBreakdown {
    double kinetic = 0.0;
    double potential = 0.0;
    double norm = 0.0;
    double energy = 0.0;
};

struct VariationalResult {
    TrialParams params;
    EnergyBreakdown breakdown;
    int iterations = 0;
    bool converged = false;
};

/// x exp(-sqrt(x^2/k^2 + y^2/q^2)).
double trial_2p(double x, double y, const TrialParams& p);
/// exp(-sqrt(x^2/k^2 + y^2/q^2)); a reconstructed even companion trial.
double trial_1s(double x, double y, const TrialParams& p);

/// N = int phi^2, K = int |grad phi|^2, V = int 2 v_exact phi^2 over
/// x in R, y in [-pi r, pi r]. Throws AccuracyError if the rule produces a
/// non-finite or non-positive norm.
EnergyBreakdown energy_2p(Radius r, const TrialParams& p, const QuadratureSpec& quad = {});
EnergyBreakdown energy_1s(Radius r, const TrialParams& p, const QuadratureSpec& quad = {});

/// Nelder-Mead over (ln k, ln q). Without `init`, restarts from (3, 3),
/// (1, r) and (1, 1) and keeps the lowest energy.
VariationalResult minimize_2p(Radius r, const QuadratureSpec& quad = {},
                              std::optional<TrialParams> init = std::nullopt);
VariationalResult minimize_1s(Radius r, const QuadratureSpec& quad = {},
                              std::optional<TrialParams> init = std::nullopt);

/// -1 - 8 (1 + gamma + ln r) r^2. Throws DomainError unless 0 < r < 1.
double small_r_correction(Radius r);

} // namespace exciton::variational
