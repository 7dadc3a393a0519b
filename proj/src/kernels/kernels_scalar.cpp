#include <cmath>
#include <cstdint>
#include <cstring>

#include "exciton/kernels.hpp"
#include "exp_constants.hpp"

namespace exciton::kernels {

double exp_neg(double x)
{
    using namespace detail;
    x = x < kExpFloor ? kExpFloor : x;
    const double n = std::nearbyint(x * kLog2e);
    double r = x - n * kLn2Hi;
    r = r - n * kLn2Lo;
    double p = kExpCoeff[0];
    for (int i = 1; i < kExpDegree - 1; ++i) {
        p = p * r + kExpCoeff[i];
    }
    p = p * r + 1.0;
    p = p * r + 1.0;
    const std::int64_t bits = (static_cast<std::int64_t>(n) + 1023) << 52;
    double scale;
    std::memcpy(&scale, &bits, sizeof scale);
    return p * scale;
}

namespace scalar {

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin)
{
    const std::size_t n = diag.size();
    for (std::size_t s = 0; s < shifts.size(); ++s) {
        const double shift = shifts[s];
        int count = 0;
        double q = diag[0] - shift;
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        count += q < 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            q = (diag[i] - shift) - offdiag_sq[i - 1] / q;
            if (std::abs(q) < pivmin) {
                q = -pivmin;
            }
            count += q < 0.0;
        }
        counts[s] = count;
    }
}

MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape)
{
    const double ik2 = 1.0 / (k * k);
    const double iq2 = 1.0 / (q * q);
    const bool odd = shape == TrialShape::odd_x;
    MomentSums sums;
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
        const double x = nodes.x[i];
        const double y = nodes.y[i];
        const double rho = std::sqrt(x * x * ik2 + y * y * iq2);
        const double e = exp_neg(-rho);
        const double g = odd ? x : 1.0;
        const double dg = odd ? 1.0 : 0.0;
        const double phi = g * e;
        const double phi2 = phi * phi;
        const double dx = e * (dg - g * x * ik2 / rho);
        const double dy = -(e * g * y * iq2 / rho);
        const double w = nodes.w[i];
        sums.norm += w * phi2;
        sums.kinetic += w * (dx * dx + dy * dy);
        sums.potential += w * (2.0 * phi2 / std::sqrt(x * x + nodes.chord2[i]));
    }
    return sums;
}

void v_eff_batch(std::span<const double> x, double r, std::span<double> out)
{
    const double four_r2 = 4.0 * r * r;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double rho = std::sqrt(x[i] * x[i] + four_r2);
        double a = 1.0;
        double b = std::abs(x[i]) / rho;
        for (int it = 0; it < detail::kAgmIterations; ++it) {
            const double next_a = 0.5 * (a + b);
            b = std::sqrt(a * b);
            a = next_a;
        }
        // 2 K / (pi rho) with K = pi / (a + b)
        out[i] = 2.0 / (rho * (a + b));
    }
}

} // namespace scalar

} // namespace exciton::kernels
