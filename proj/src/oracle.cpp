#include "exciton/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "exciton/errors.hpp"
#include "exciton/kernels.hpp"

namespace exciton::oracle {

namespace {

constexpr double kTolerance = 1e-10;
constexpr int kProbes = 4;

struct Bracket {
    double lo, hi;
};

std::vector<double> sturm_bisect(const std::vector<double>& diag, double off, int k)
{
    const int n = static_cast<int>(diag.size());
    if (k < 1 || k > n) {
        throw_domain("lowest_eigenvalues", "k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    const double radius = 2.0 * std::abs(off);
    const auto [dmin, dmax] = std::minmax_element(diag.begin(), diag.end());
    const double lo = *dmin - radius - kTolerance;
    const double hi = *dmax + radius + kTolerance;

    const std::vector<double> off_sq(n > 1 ? n - 1 : 0, off * off);
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, off * off);

    std::vector<Bracket> brackets(k, Bracket{lo, hi});
    std::vector<double> shifts;
    std::vector<int> counts;
    std::vector<int> active;
    while (true) {
        active.clear();
        for (int i = 0; i < k; ++i) {
            if (brackets[i].hi - brackets[i].lo > kTolerance) {
                active.push_back(i);
            }
        }
        if (active.empty()) {
            break;
        }
        shifts.resize(active.size() * kProbes);
        counts.resize(shifts.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            const Bracket& b = brackets[active[a]];
            const double step = (b.hi - b.lo) / (kProbes + 1);
            for (int m = 0; m < kProbes; ++m) {
                shifts[a * kProbes + m] = b.lo + (m + 1) * step;
            }
        }
        kernels::sturm_counts(diag, off_sq, shifts, counts, pivmin);
        for (std::size_t a = 0; a < active.size(); ++a) {
            const int i = active[a];
            Bracket& b = brackets[i];
            double new_lo = b.lo;
            double new_hi = b.hi;
            for (int m = 0; m < kProbes; ++m) {
                const double s = shifts[a * kProbes + m];
                if (counts[a * kProbes + m] > i) {
                    new_hi = s;
                    break;
                }
                new_lo = s;
            }
            b = Bracket{new_lo, new_hi};
        }
    }
    std::vector<double> values(k);
    for (int i = 0; i < k; ++i) {
        values[i] = 0.5 * (brackets[i].lo + brackets[i].hi);
    }
    return values;
}

// The walls sit at +-L, half a step beyond the end nodes: the ghost value
// beyond each end is minus the end value.
void place_walls(std::vector<double>& diagonal, double ih2)
{
    diagonal.front() += ih2;
    diagonal.back() += ih2;
}

} // namespace

void GridSpec::validate() const
{
    if (!(half_length > 0.0) || !std::isfinite(half_length)) {
        throw ConfigError("grid: half length must be positive, got " + std::to_string(half_length));
    }
    if (n_points < 2 || n_points % 2 != 0) {
        throw ConfigError("grid: n_points must be even and >= 2 (got " + std::to_string(n_points) +
                          "); an odd count places a node at x = 0");
    }
}

std::vector<double> GridSpec::nodes() const
{
    std::vector<double> x(n_points);
    for (int j = 0; j < n_points; ++j) {
        x[j] = node(j);
    }
    return x;
}

TridiagonalOperator build_hamiltonian(const GridSpec& grid, const std::function<double(double)>& potential)
{
    grid.validate();
    const double h = grid.spacing();
    const double ih2 = 1.0 / (h * h);
    TridiagonalOperator op;
    op.diagonal.resize(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
        op.diagonal[j] = 2.0 * ih2 + potential(grid.node(j));
    }
    place_walls(op.diagonal, ih2);
    op.off_diagonal = -ih2;
    op.grid = grid;
    return op;
}

TridiagonalOperator build_hamiltonian(Radius r, const GridSpec& grid)
{
    grid.validate();
    const double h = grid.spacing();
    const double ih2 = 1.0 / (h * h);
    const auto x = grid.nodes();
    std::vector<double> v(x.size());
    kernels::v_eff_batch(x, r.value(), v);
    TridiagonalOperator op;
    op.diagonal.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        op.diagonal[j] = 2.0 * ih2 - 2.0 * v[j];
    }
    place_walls(op.diagonal, ih2);
    op.off_diagonal = -ih2;
    op.grid = grid;
    return op;
}

int count_below(const TridiagonalOperator& op, double shift)
{
    const std::vector<double> off_sq(op.diagonal.size() - 1, op.off_diagonal * op.off_diagonal);
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, op.off_diagonal * op.off_diagonal);
    int count = 0;
    const double shifts[1] = {shift};
    kernels::sturm_counts(op.diagonal, off_sq, shifts, {&count, 1}, pivmin);
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k)
{
    return sturm_bisect(op.diagonal, op.off_diagonal, k);
}

std::vector<double> parity_eigenvalues(const TridiagonalOperator& op, coulomb::Parity parity, int k)
{
    const std::size_t n = op.diagonal.size();
    if (n < 2 || n % 2 != 0) {
        throw ConfigError("parity reduction needs an even dimension, got " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double a = op.diagonal[j];
        const double b = op.diagonal[n - 1 - j];
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
            throw ConfigError("parity reduction needs a mirror-symmetric diagonal");
        }
    }
    // Right half x_j > 0; the node at h/2 couples to its mirror image at -h/2,
    // where psi(-h/2) = +-psi(h/2).
    std::vector<double> half(op.diagonal.begin() + static_cast<std::ptrdiff_t>(n / 2), op.diagonal.end());
    half.front() += parity == coulomb::Parity::even ? op.off_diagonal : -op.off_diagonal;
    return sturm_bisect(half, op.off_diagonal, k);
}

} // namespace exciton::oracle
