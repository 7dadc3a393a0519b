#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace exciton {

/// Integration parameters shared by every quadrature-based operation.
///
/// The adaptive fields drive one-dimensional Gauss-Kronrod integration (forms,
/// potentials, special-function integral representations); the panel fields
/// drive the fixed product rules of the variational engine.
struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
    /// Depth T of the substitution x = x0 exp(-t), t in [0, T], used at
    /// logarithmic singularities.
    double log_depth = 60.0;

    int gauss_order = 10;      ///< Gauss-Legendre nodes per panel (variational).
    int radial_panels = 12;    ///< panels along each ray from the origin
    int angular_panels = 8;    ///< panels in the ray-slope coordinate, per triangle
    double tail_extent = 24.0; ///< truncation, in decay lengths

    /// Same scheme with every panel count doubled.
    [[nodiscard]] QuadratureSpec refined() const;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule (thread safe; n >= 1).
const GaussRule& gauss_legendre(int n);

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double sum = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * sum;
        }
    }
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod integration of f over [a, b].
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    if (a == b) {
        return {0.0, 0.0, 0, true};
    }
    std::priority_queue<detail::Segment> heap;
    auto first = detail::gk15(f, a, b);
    double total = first.value;
    double error = first.error;
    heap.push(first);
    int intervals = 1;
    while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
           intervals < spec.max_intervals) {
        auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) {
            break; // interval exhausted at machine resolution
        }
        heap.pop();
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    const bool ok = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) ||
                    error <= 1e3 * spec.rel_tol * std::abs(total);
    return {total, error, intervals, ok};
}

/// Integral over [a, inf) with the map x = a + scale * u / (1 - u).
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, double scale, const QuadratureSpec& spec = {})
{
    auto mapped = [&](double u) {
        if (u >= 1.0) {
            return 0.0;
        }
        const double one_minus = 1.0 - u;
        const double x = a + scale * u / one_minus;
        const double jac = scale / (one_minus * one_minus);
        const double v = f(x) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

/// Integral over (0, x0] of a function with an integrable singularity at 0,
/// via x = x0 exp(-t). The neglected piece (0, x0 exp(-log_depth)) is below
/// double resolution for logarithmic singularities.
template <class F>
QuadResult integrate_log_origin(F&& f, double x0, const QuadratureSpec& spec = {})
{
    auto mapped = [&](double t) {
        const double x = x0 * std::exp(-t);
        return f(x) * x;
    };
    return integrate(mapped, 0.0, spec.log_depth, spec);
}

/// Integral over (0, inf) of a function that may carry a logarithmic
/// singularity at 0 and decays on the length scale `scale`.
template <class F>
QuadResult integrate_half_line(F&& f, double scale, const QuadratureSpec& spec = {})
{
    auto inner = integrate_log_origin(f, scale, spec);
    auto outer = integrate_to_infinity(f, scale, scale, spec);
    return {inner.value + outer.value, inner.abs_error + outer.abs_error,
            inner.intervals + outer.intervals, inner.converged && outer.converged};
}

/// Fixed composite Gauss-Legendre rule: appends nodes/weights of an n-point
/// rule on each panel [breaks[i], breaks[i+1]].
void append_composite_rule(std::span<const double> breaks, int n, std::vector<double>& nodes,
                           std::vector<double>& weights);

} // namespace exciton
