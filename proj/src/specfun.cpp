#include "exciton/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "exciton/errors.hpp"
#include "exciton/quadrature.hpp"

namespace exciton::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDigammaAsymptotic = 8.0;

// B_{2k} / (2k), k = 1..7.
constexpr double kBernoulliOverIndex[] = {
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

SpecialValue digamma_positive(double x)
{
    double shift = 0.0;
    double shift_mag = 0.0;
    while (x < kDigammaAsymptotic) {
        shift -= 1.0 / x;
        shift_mag += 1.0 / x;
        x += 1.0;
    }
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    double power = inv2;
    for (double c : kBernoulliOverIndex) {
        series += c * power;
        power *= inv2;
    }
    // First omitted term: B_16 / 16 x^-16.
    const double truncation = (3617.0 / 510.0 / 16.0) * power;
    const double value = std::log(x) - 0.5 / x - series + shift;
    const double err = 4.0 * kEps * (std::abs(std::log(x)) + shift_mag + std::abs(value)) + truncation;
    return {value, err};
}

} // namespace

EllipticModulus::EllipticModulus(double m) : m_(m)
{
    if (!(m >= 0.0)) {
        throw_domain("elliptic_k", "parameter m = " + std::to_string(m) + " is negative");
    }
    if (!(m < 1.0)) {
        throw_domain("elliptic_k", "parameter m = " + std::to_string(m) +
                                       " >= 1 (logarithmic divergence at m = 1)");
    }
}

SpecialValue digamma(double x)
{
    if (!std::isfinite(x)) {
        throw_domain("digamma", "non-finite argument");
    }
    if (x <= 0.0 && x == std::floor(x)) {
        throw_domain("digamma", "pole at x = " + std::to_string(static_cast<long long>(x)));
    }
    if (x > 0.0) {
        return digamma_positive(x);
    }
    // Psi(x) = Psi(1 - x) - pi cot(pi x); cot has period 1, so reduce first.
    const double frac = x - std::nearbyint(x);
    const double cot = 1.0 / std::tan(std::numbers::pi * frac);
    const auto base = digamma_positive(1.0 - x);
    const double pc = std::numbers::pi * cot;
    return {base.value - pc, base.est_abs_error + 4.0 * kEps * std::abs(pc) * (1.0 + std::abs(cot))};
}

double laguerre1(int n, double z)
{
    if (n < 0) {
        throw_domain("laguerre1", "degree n = " + std::to_string(n) + " is negative");
    }
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = 2.0 - z;
    // (k+1) L_{k+1} = (2k + 2 - z) L_k - (k+1) L_{k-1}
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 2.0 - z) * cur - (k + 1.0) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

SpecialValue kummer_u_b2(double a, double z)
{
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw_domain("kummer_u_b2", "argument z = " + std::to_string(z) + " must be positive");
    }
    if (a <= 0.0) {
        const double zs[] = {z};
        const auto trace = whittaker_trace(1.0 - a, zs);
        // W = e^{-z/2} h and U = W / (z e^{-z/2}); undo the scaling directly.
        const double value = trace.points[0].value * std::exp(0.5 * z) / z;
        return {value, std::abs(value) * trace.est_rel_error};
    }

    // U(a, 2, z) = Gamma(a)^{-1} int_0^inf e^{-zt} t^{a-1} (1+t)^{1-a} dt
    const QuadratureSpec spec{.abs_tol = 0.0, .rel_tol = 1e-14, .max_intervals = 2000};
    auto smooth = [a, z](double t) { return std::exp(-z * t) * std::pow(1.0 + t, 1.0 - a); };
    // On [0, 1] substitute t = s^{1/a}: t^{a-1} dt = ds / a.
    auto head_integrand = [&](double s) { return smooth(std::pow(s, 1.0 / a)) / a; };
    auto head = integrate(head_integrand, 0.0, 1.0, spec);
    auto tail_integrand = [&](double t) { return smooth(t) * std::pow(t, a - 1.0); };
    auto tail = integrate_to_infinity(tail_integrand, 1.0, 1.0 / z, spec);
    const double gamma = std::tgamma(a);
    const double value = (head.value + tail.value) / gamma;
    const double err = (head.abs_error + tail.abs_error) / std::abs(gamma) + 8.0 * kEps * std::abs(value);
    if (!head.converged || !tail.converged) {
        throw AccuracyError("kummer_u_b2: integral representation did not converge for a = " +
                            std::to_string(a) + ", z = " + std::to_string(z));
    }
    return {value, err};
}

SpecialValue whittaker_w(double alpha, double z)
{
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw_domain("whittaker_w", "argument z = " + std::to_string(z) + " must be positive");
    }
    const double zs[] = {z};
    const auto trace = whittaker_trace(alpha, zs);
    const double value = trace.points[0].value;
    return {value, std::abs(value) * trace.est_rel_error + std::numeric_limits<double>::min()};
}

double elliptic_k_complement(double mc)
{
    if (!(mc > 0.0) || mc > 1.0) {
        throw_domain("elliptic_k", "complementary parameter 1 - m = " + std::to_string(mc) +
                                       " outside (0, 1]");
    }
    double a = 1.0;
    double b = std::sqrt(mc);
    for (int i = 0; i < 64 && std::abs(a - b) > 2.0 * kEps * a; ++i) {
        const double next_a = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next_a;
    }
    return std::numbers::pi / (a + b);
}

SpecialValue elliptic_k(EllipticModulus m)
{
    const double mc = 1.0 - m.value();
    const double value = elliptic_k_complement(mc);
    // Rounding of 1 - m propagates through dK/dmc ~ -1/(2 mc) near m = 1.
    return {value, 16.0 * kEps * value + kEps / (2.0 * mc)};
}

} // namespace exciton::specfun
