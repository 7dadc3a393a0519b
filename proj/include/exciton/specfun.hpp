#pragma once

#include <numbers>
#include <span>
#include <vector>

namespace exciton::specfun {

inline constexpr double euler_gamma = std::numbers::egamma_v<double>;

/// A function value together with an estimate of its absolute error.
struct SpecialValue {
    double value = 0.0;
    double est_abs_error = 0.0;
};

/// Parameter of K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt, restricted to [0, 1).
class EllipticModulus {
public:
    /// Throws DomainError unless 0 <= m < 1.
    explicit EllipticModulus(double m);
    [[nodiscard]] double value() const { return m_; }

private:
    double m_;
};

/// Digamma function Psi(x) = Gamma'(x) / Gamma(x).
///
/// Upward recurrence into x >= 8, then the asymptotic series through B_14;
/// negative arguments go through the reflection formula with the cotangent
/// evaluated on the fractional part. Throws DomainError at the poles
/// x = 0, -1, -2, ...
SpecialValue digamma(double x);

/// Associated Laguerre polynomial L^1_n(z) by the three-term recurrence in n.
double laguerre1(int n, double z);

/// Kummer function of the second kind U(a, 2, z), z > 0.
///
/// For a > 0 the integral representation is integrated directly. For a <= 0
/// the value comes from the backward-integrated Whittaker function,
/// U(a, 2, z) = W_{1-a,1/2}(z) / (z e^{-z/2}).
SpecialValue kummer_u_b2(double a, double z);

/// Whittaker function W_{alpha,1/2}(z), z > 0, by backward integration of
/// w'' = (1/4 - alpha/z) w from max(40, z + 30).
SpecialValue whittaker_w(double alpha, double z);

/// Complete elliptic integral of the first kind by the AGM.
SpecialValue elliptic_k(EllipticModulus m);

/// K expressed through the complementary parameter mc = 1 - m, mc in (0, 1].
/// Stays accurate where m itself would round to 1.
double elliptic_k_complement(double mc);

// ---------------------------------------------------------------------------
// Whittaker trajectories

/// W_{alpha,1/2} and its z-derivative at one abscissa.
struct WhittakerPoint {
    double z = 0.0;
    double value = 0.0;
    double derivative = 0.0;
};

struct WhittakerTrace {
    /// Samples in the order the abscissae were requested.
    std::vector<WhittakerPoint> points;
    /// int_{z_low}^{z_top} W^2 dz, where z_low is the smallest abscissa.
    double square_integral = 0.0;
    /// Relative error estimate (integrator tolerance plus asymptotic seed).
    double est_rel_error = 0.0;
    int steps = 0;
};

/// Integrates the Whittaker equation once from z_top down to the smallest
/// requested abscissa and samples W, W' along the way. Values sampled from one
/// trajectory share their integration error, so finite differences taken
/// across them are smooth.
///
/// z_top <= 0 selects max(40, max(z) + 30). Throws DomainError for
/// non-positive abscissae and AccuracyError when the asymptotic seed at z_top
/// has not converged.
WhittakerTrace whittaker_trace(double alpha, std::span<const double> z, double z_top = 0.0);

} // namespace exciton::specfun
