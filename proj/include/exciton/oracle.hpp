#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "exciton/coulomb.hpp"
#include "exciton/potential.hpp"

namespace exciton::oracle {

/// Midpoint-offset grid on [-L, L]: x_j = -L + (j + 1/2) h, h = 2L / n.
struct GridSpec {
    double half_length = 25.0;
    int n_points = 10000;

    /// Throws ConfigError unless L > 0 and n is even and >= 2 (odd n would
    /// put a node on the singular point x = 0).
    void validate() const;
    [[nodiscard]] double spacing() const { return 2.0 * half_length / n_points; }
    /// -L + (j + 1/2) h, written so that node(n - 1 - j) == -node(j) exactly.
    [[nodiscard]] double node(int j) const { return (2 * j - n_points + 1) * (half_length / n_points); }
    [[nodiscard]] std::vector<double> nodes() const;
};

/// Symmetric tridiagonal matrix with constant off-diagonal.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    double off_diagonal = 0.0;
    std::optional<GridSpec> grid;
};

/// -d^2/dx^2 + V(x) with Dirichlet ends; V sampled at the grid nodes.
TridiagonalOperator build_hamiltonian(const GridSpec& grid, const std::function<double(double)>& potential);
/// -d^2/dx^2 - 2 v_eff(x, r).
TridiagonalOperator build_hamiltonian(Radius r, const GridSpec& grid);

/// Number of eigenvalues strictly below `shift`.
int count_below(const TridiagonalOperator& op, double shift);

/// The k smallest eigenvalues, ascending, by Sturm bisection to 1e-10.
/// Throws DomainError unless 1 <= k <= dimension.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k);

/// The k smallest eigenvalues of the even or odd sector, from the half-line
/// reduction of a mirror-symmetric operator. Throws ConfigError when the
/// diagonal is not mirror symmetric or the dimension is odd.
std::vector<double> parity_eigenvalues(const TridiagonalOperator& op, coulomb::Parity parity, int k);

} // namespace exciton::oracle
