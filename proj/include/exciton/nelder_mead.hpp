#pragma once

#include <functional>
#include <vector>

namespace exciton {

struct SimplexOptions {
    double initial_step = 0.3;
    double diameter_tol = 1e-6;
    double value_tol = 1e-10;
    int max_iterations = 500;
};

struct SimplexResult {
    std::vector<double> point;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double diameter = 0.0;
};

/// Nelder-Mead minimisation with standard coefficients (1, 2, 1/2, 1/2).
/// Converged means the simplex diameter (max vertex distance from the best
/// vertex) and the spread of vertex values both fell below tolerance.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const SimplexOptions& options = {});

} // namespace exciton
