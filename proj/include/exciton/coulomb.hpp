#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exciton/potential.hpp"

namespace exciton::coulomb {

enum class Parity { even, odd };

/// Bound-state label n s (even) or n p (odd); n is the smallest integer >= alpha.
struct StateLabel {
    int n = 1;
    Parity parity = Parity::even;

    /// Throws DomainError for n < 1 or an odd state with n < 2.
    static StateLabel make(int n, Parity parity);
    /// Parses "1s", "2p", ...
    static StateLabel parse(std::string_view text);
    [[nodiscard]] std::string str() const;
    bool operator==(const StateLabel&) const = default;
};

/// A solved bound state of the Coulomb model. Energies in effective Rydbergs.
struct EigenSolution {
    StateLabel label;
    double alpha = 0.0;     ///< energy = -1 / alpha^2
    double energy = 0.0;
    double norm_const = 0.0; ///< prefactor giving unit norm in the scaled coordinate z
    double r = 0.0;
};

struct BoundaryResidual {
    double value = 0.0;
    double epsilon_used = 0.0;
};

/// Psi(1 - alpha) + 2 gamma + 1/(2 alpha) - ln(alpha) + ln(r). Its zeros on
/// each interval (N, N+1) give the even spectrum. Throws DomainError for
/// alpha <= 0 or integer alpha.
double even_condition(double alpha, Radius r);

/// Sign changes of even_condition over `points` equally spaced abscissae in
/// (N + 1e-6, N + 1 - 1e-6).
int count_sign_changes(int interval, Radius r, int points = 1000);

/// The even state n s: the unique root of even_condition in (n-1, n).
/// Throws RootNotFoundError when the bracket holds no sign change.
EigenSolution even_alpha(int n, Radius r, double tol = 1e-13);

/// Even-parity solution of the radial equation for an arbitrary non-integer
/// alpha (normalised, labelled by ceil(alpha)). Only roots of even_condition
/// satisfy the origin condition; other alphas serve as controls.
EigenSolution make_even_state(double alpha, Radius r);

/// The odd state n p (n >= 2): alpha = n - 1, energy = -1/(n-1)^2 for every r.
EigenSolution odd_solution(int n, Radius r);

/// The `count` lowest bound states, ascending: 1s, 2p, 2s, 3p, 3s, ...
std::vector<EigenSolution> spectrum(Radius r, int count, double tol = 1e-13);

/// Normalised eigenfunction in the scaled coordinate z (x = alpha z / 2).
double eigenfunction(const EigenSolution& sol, double z);
/// d/dz of eigenfunction. Even states have a logarithmic cusp at 0, where
/// this throws DomainError.
double eigenfunction_derivative(const EigenSolution& sol, double z);
/// Normalised eigenfunction in the physical coordinate x.
double eigenfunction_x(const EigenSolution& sol, double x);

/// max_j |-psi'' - 2 psi/|x| - E psi| / max_j |psi| over the samples, psi''
/// by central differences with h = 1e-4 in x.
double ode_residual(const EigenSolution& sol, std::span<const double> x_samples);
/// The same check on psi~'' - psi~/4 + alpha psi~/|z| = 0 in the scaled
/// coordinate, with the step mapped to h_z = 2h/alpha.
double ode_residual_scaled(const EigenSolution& sol, std::span<const double> z_samples);

/// [psi~'(-eps) - psi~'(eps)]/2 + alpha (ln r - ln(alpha eps)) psi~(0); tends
/// to 0 as eps -> 0 exactly when sol satisfies the origin condition at r.
BoundaryResidual boundary_residual(const EigenSolution& sol, Radius r, double epsilon);

/// Small-radius ground-state law -4 (ln r)^2, 0 < r < 1.
double ground_asymptote(Radius r);

} // namespace exciton::coulomb
