#include "exciton/potential.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "exciton/errors.hpp"
#include "exciton/specfun.hpp"

namespace exciton {

Radius::Radius(double r) : r_(r)
{
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw_domain("Radius", "r = " + std::to_string(r) + " must be positive and finite");
    }
}

namespace potential {

namespace {

FormValue sum(const QuadResult& a, const QuadResult& b)
{
    if (!a.converged || !b.converged) {
        throw AccuracyError("form quadrature did not converge");
    }
    return {a.value + b.value, a.abs_error + b.abs_error};
}

} // namespace

double v_exact(double x, double y, Radius r)
{
    const double rr = r.value();
    const double period = 2.0 * std::numbers::pi * rr;
    const double yr = std::remainder(y, period);
    if (x == 0.0 && yr == 0.0) {
        throw_domain("v_exact", "coincident points (x = 0, y = 0 mod 2 pi r)");
    }
    const double chord = 2.0 * rr * std::sin(yr / (2.0 * rr));
    return 1.0 / std::sqrt(x * x + chord * chord);
}

double v_eff(double x, Radius r)
{
    if (x == 0.0) {
        throw_domain("v_eff", "x = 0 (logarithmic divergence)");
    }
    const double rr = r.value();
    const double rho2 = x * x + 4.0 * rr * rr;
    // 1 - m = x^2 / (x^2 + 4r^2), formed directly so that K stays finite for |x| << r.
    const double k = specfun::elliptic_k_complement(x * x / rho2);
    return 2.0 * k / (std::numbers::pi * std::sqrt(rho2));
}

QuadResult v_eff_quadrature(double x, Radius r, const QuadratureSpec& quad)
{
    const double rr = r.value();
    if (x == 0.0) {
        throw_domain("v_eff_quadrature", "x = 0 (logarithmic divergence)");
    }
    auto integrand = [&](double y) {
        const double s = 2.0 * rr * std::sin(y / (2.0 * rr));
        return 1.0 / std::sqrt(x * x + s * s);
    };
    constexpr int kPanels = 64;
    const double half_period = std::numbers::pi * rr;
    QuadResult total{0.0, 0.0, 0, true};
    for (int p = 0; p < kPanels; ++p) {
        const double a = half_period * p / kPanels;
        const double b = half_period * (p + 1) / kPanels;
        const auto piece = integrate(integrand, a, b, quad);
        total.value += piece.value;
        total.abs_error += piece.abs_error;
        total.intervals += piece.intervals;
        total.converged = total.converged && piece.converged;
    }
    // (1 / 2 pi r) * 2 * int_0^{pi r}
    const double norm = 1.0 / (std::numbers::pi * rr);
    total.value *= norm;
    total.abs_error *= norm;
    return total;
}

FormValue c0_form(const TestFunction& f, const QuadratureSpec& quad)
{
    // Fold x < 0 onto t = -x:  C_0 = int_0^inf ln t [(f^2)'(-t) - (f^2)'(t)] dt
    auto integrand = [&](double t) {
        const double left = 2.0 * f.value(-t) * f.derivative(-t);
        const double right = 2.0 * f.value(t) * f.derivative(t);
        return std::log(t) * (left - right);
    };
    const auto inner = integrate_log_origin(integrand, f.scale, quad);
    const auto outer = integrate_to_infinity(integrand, f.scale, f.scale, quad);
    return sum(inner, outer);
}

FormValue c0_form_split(const TestFunction& f, double eps, const QuadratureSpec& quad)
{
    if (!(eps > 0.0)) {
        throw_domain("c0_form_split", "eps must be positive");
    }
    auto near = [&](double t) {
        const double left = 2.0 * f.value(-t) * f.derivative(-t);
        const double right = 2.0 * f.value(t) * f.derivative(t);
        return std::log(t) * (left - right);
    };
    auto coulomb_tail = [&](double t) {
        const double a = f.value(t);
        const double b = f.value(-t);
        return (a * a + b * b) / t;
    };
    const auto inner = integrate_log_origin(near, eps, quad);
    const auto outer = integrate_to_infinity(coulomb_tail, eps, std::max(eps, f.scale), quad);
    const double fe = f.value(eps);
    const double fme = f.value(-eps);
    auto total = sum(inner, outer);
    total.value += std::log(eps) * (fe * fe + fme * fme);
    return total;
}

FormValue vc_form(const TestFunction& f, Radius r, const QuadratureSpec& quad)
{
    auto c0 = c0_form(f, quad);
    const double f0 = f.value(0.0);
    c0.value += -2.0 * std::log(r.value() / 2.0) * f0 * f0;
    return c0;
}

FormValue veff_form(const TestFunction& f, Radius r, const QuadratureSpec& quad)
{
    auto integrand = [&](double t) {
        const double a = f.value(t);
        const double b = f.value(-t);
        return v_eff(t, r) * (a * a + b * b);
    };
    const auto inner = integrate_log_origin(integrand, f.scale, quad);
    const auto outer = integrate_to_infinity(integrand, f.scale, f.scale, quad);
    return sum(inner, outer);
}

double form_residual(const TestFunction& f, Radius r, const QuadratureSpec& quad)
{
    return veff_form(f, r, quad).value - vc_form(f, r, quad).value;
}

} // namespace potential

namespace test_functions {

TestFunction exponential(double length)
{
    return {[length](double x) { return std::exp(-std::abs(x) / length); },
            [length](double x) {
                const double s = x > 0.0 ? -1.0 : (x < 0.0 ? 1.0 : 0.0);
                return s / length * std::exp(-std::abs(x) / length);
            },
            length};
}

TestFunction gaussian(double width)
{
    return {[width](double x) { return std::exp(-(x / width) * (x / width)); },
            [width](double x) { return -2.0 * x / (width * width) * std::exp(-(x / width) * (x / width)); },
            width};
}

TestFunction odd_gaussian(double width)
{
    return {[width](double x) { return x * std::exp(-(x / width) * (x / width)); },
            [width](double x) {
                const double u = x / width;
                return (1.0 - 2.0 * u * u) * std::exp(-u * u);
            },
            width};
}

} // namespace test_functions

} // namespace exciton
