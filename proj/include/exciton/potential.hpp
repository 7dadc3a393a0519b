#pragma once

#include <functional>

#include "exciton/quadrature.hpp"

namespace exciton {

/// Tube radius in units of the effective Bohr radius.
class Radius {
public:
    /// Throws DomainError unless r > 0 and finite.
    explicit Radius(double r);
    [[nodiscard]] double value() const { return r_; }
    /// The small-radius approximation chain assumes r <= 1.
    [[nodiscard]] bool in_validity_regime() const { return r_ <= 1.0; }

private:
    double r_;
};

/// Smooth trial function f with its analytic derivative and decay length.
struct TestFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double scale = 1.0;
};

struct FormValue {
    double value = 0.0;
    double quadrature_error = 0.0;
};

namespace potential {

/// Magnitude of the Coulomb interaction restricted to the cylinder,
/// 1 / sqrt(x^2 + 4 r^2 sin^2(y / 2r)). y is reduced onto [-pi r, pi r].
double v_exact(double x, double y, Radius r);

/// Transverse average of v_exact over the lowest circumferential mode, in
/// closed form 2 K(m) / (pi sqrt(x^2 + 4r^2)) with m = 4r^2 / (x^2 + 4r^2).
double v_eff(double x, Radius r);

/// v_eff by direct adaptive quadrature of the defining transverse average
/// (64 starting panels over the half period).
QuadResult v_eff_quadrature(double x, Radius r, const QuadratureSpec& quad = {});

/// C_0(f, f) = -int_0^inf ln(x) (f^2)' dx + int_{-inf}^0 ln(-x) (f^2)' dx.
FormValue c0_form(const TestFunction& f, const QuadratureSpec& quad = {});

/// The same form written with an explicit cut at +-eps (integration by parts
/// of the 1/|x| tail). Equal to c0_form for every eps > 0.
FormValue c0_form_split(const TestFunction& f, double eps, const QuadratureSpec& quad = {});

/// <f, V_C f> = -2 ln(r/2) f(0)^2 + C_0(f, f).
FormValue vc_form(const TestFunction& f, Radius r, const QuadratureSpec& quad = {});

/// <f, V_eff f> = int v_eff(x) f(x)^2 dx.
FormValue veff_form(const TestFunction& f, Radius r, const QuadratureSpec& quad = {});

/// veff_form - vc_form; vanishes as r -> 0.
double form_residual(const TestFunction& f, Radius r, const QuadratureSpec& quad = {});

} // namespace potential

/// Reference trial functions used by tests, the CLI and the acceptance suite.
namespace test_functions {
TestFunction exponential(double length = 1.0);  ///< e^{-|x|/length}
TestFunction gaussian(double width = 1.0);      ///< e^{-(x/width)^2}
TestFunction odd_gaussian(double width = 1.0);  ///< x e^{-(x/width)^2}
} // namespace test_functions

} // namespace exciton
