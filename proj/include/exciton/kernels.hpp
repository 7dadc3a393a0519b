#pragma once

// Data-parallel inner loops with a scalar reference implementation and SIMD
// variants picked at run time. Lane arithmetic in every variant follows the
// scalar operation order exactly (the project builds with -ffp-contract=off),
// so per-element results agree bit for bit; only reductions may differ in
// summation order.

#include <optional>
#include <span>
#include <string_view>

namespace exciton::kernels {

enum class Isa { scalar, avx2 };

/// Best variant the running CPU supports.
Isa detected_isa();
/// Variant used by the dispatching entry points: the override if set,
/// otherwise EXCITON_ISA from the environment ("scalar" / "avx2"), otherwise
/// detected_isa(). Requests the CPU cannot honour fall back to scalar.
Isa active_isa();
void set_isa_override(std::optional<Isa> isa);
std::string_view isa_name(Isa isa);

/// Trial shape: g(x) e^{-rho} with g = x (odd in x) or g = 1 (even).
enum class TrialShape { odd_x, even };

/// Quadrature nodes for the cylinder energy integrals. chord2[i] is
/// 4 r^2 sin^2(y_i / 2r), precomputed by the caller.
struct TrialNodes {
    std::span<const double> x;
    std::span<const double> y;
    std::span<const double> w;
    std::span<const double> chord2;
};

/// Weighted sums of phi^2, |grad phi|^2 and 2 phi^2 / sqrt(x^2 + chord2).
struct MomentSums {
    double norm = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
};

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, offdiag)
/// below each shift, by Sturm sequence. offdiag_sq holds the squared
/// off-diagonal (size n - 1).
void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin);

MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape);

/// Effective potential 1 / (rho AGM(1, |x|/rho)), rho = sqrt(x^2 + 4r^2), x != 0.
void v_eff_batch(std::span<const double> x, double r, std::span<double> out);

/// exp(x) for x <= 0 by Cody-Waite reduction and a degree-13 polynomial;
/// the reference for the vector variants.
double exp_neg(double x);

namespace scalar {
void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin);
MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape);
void v_eff_batch(std::span<const double> x, double r, std::span<double> out);
} // namespace scalar

namespace avx2 {
/// False when the build target has no AVX2 path (non-x86 compilers).
bool compiled();
void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin);
MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape);
void v_eff_batch(std::span<const double> x, double r, std::span<double> out);
} // namespace avx2

} // namespace exciton::kernels
