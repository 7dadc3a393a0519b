#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "exciton/errors.hpp"
#include "exciton/potential.hpp"
#include "exciton/specfun.hpp"
#include "oracles.hpp"

using namespace exciton;
using namespace exciton::potential;

namespace {
constexpr double pi = std::numbers::pi;
const double c0_exponential = -2.0 * (specfun::euler_gamma + std::log(2.0));

std::vector<double> log_grid(double a, double b, int n)
{
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    }
    return x;
}
} // namespace

TEST_CASE("radius validation")
{
    CHECK_THROWS_AS(Radius(0.0), DomainError);
    CHECK_THROWS_AS(Radius(-1.0), DomainError);
    CHECK_THROWS_AS(Radius(std::nan("")), DomainError);
    CHECK(Radius(1.0).in_validity_regime());
    CHECK_FALSE(Radius(1.5).in_validity_regime());
}

TEST_CASE("exact cylinder potential")
{
    const Radius r(0.1);
    CHECK(v_exact(3.0, 0.0, r) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    for (double rv : {0.01, 0.1, 2.0}) {
        CHECK(v_exact(0.0, pi * rv, Radius(rv)) == doctest::Approx(1.0 / (2.0 * rv)).epsilon(1e-14));
    }
    CHECK(v_exact(1.0, pi * 0.1 / 2.0, r) == doctest::Approx(1.0 / std::sqrt(1.02)).epsilon(1e-14));
    CHECK_THROWS_AS(v_exact(0.0, 0.0, r), DomainError);
    CHECK_THROWS_AS(v_exact(0.0, 2.0 * pi * 0.1, r), DomainError);
}

TEST_CASE("exact potential is periodic in y")
{
    const double rv = 0.25;
    const Radius r(rv);
    const double period = 2.0 * pi * rv;
    // y in [-P, -P/2]: y + P is computed exactly, so the values coincide bit for bit.
    for (double y : {-period, -0.9 * period, -0.75 * period, -0.5 * period}) {
        CHECK(v_exact(0.7, y + period, r) == v_exact(0.7, y, r));
    }
    for (double y : {-0.3, 0.1, 0.6, 1.4}) {
        CHECK(v_exact(0.7, y + period, r) == doctest::Approx(v_exact(0.7, y, r)).epsilon(1e-14));
    }
}

TEST_CASE("effective potential examples")
{
    CHECK(std::abs(v_eff(1.0, Radius(0.1)) - fixtures::v_eff_x1_r01) < 1e-10);
    CHECK(v_eff(2.0, Radius(1e-8)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(v_eff(10.0, Radius(0.5)) - 0.1) < 1e-3);
    CHECK_THROWS_AS(v_eff(0.0, Radius(0.1)), DomainError);
}

TEST_CASE("closed form matches the defining transverse average")
{
    double worst = 0.0;
    for (double rv : {0.01, 0.1, 1.0}) {
        for (double x : log_grid(0.01, 10.0, 25)) {
            const Radius r(rv);
            const double closed = v_eff(x, r);
            const auto q = v_eff_quadrature(x, r);
            CHECK(q.converged);
            worst = std::max(worst, std::abs(closed - q.value) / closed);
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("effective potential symmetry and monotonicity in r")
{
    const std::vector<double> radii = {0.01, 0.1, 1.0};
    for (double x : log_grid(0.01, 10.0, 25)) {
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const Radius r(radii[i]);
            CHECK(v_eff(-x, r) == v_eff(x, r));
            if (i > 0) {
                CHECK(v_eff(x, r) < v_eff(x, Radius(radii[i - 1])));
            }
        }
    }
}

TEST_CASE("C_0 form values")
{
    const auto e = c0_form(test_functions::exponential());
    CHECK(std::abs(e.value - c0_exponential) < 1e-6);
    CHECK(std::abs(e.value - c0_exponential) < 1e-10);

    // Odd f: C_0 equals int f^2 / |x|; for x e^{-x^2} that is 1/2.
    const auto odd = test_functions::odd_gaussian();
    const double direct =
        2.0 * oracle_ref::gl20([](double x) { return x * std::exp(-2.0 * x * x); }, 0.0, 8.0, 16);
    CHECK(std::abs(c0_form(odd).value - direct) < 1e-8);
    CHECK(std::abs(direct - 0.5) < 1e-12);
}

TEST_CASE("C_0 cut representation is independent of the cut")
{
    const auto g = test_functions::gaussian();
    const double base = c0_form(g).value;
    for (double eps : {0.1, 0.01}) {
        CHECK(std::abs(c0_form_split(g, eps).value - base) < 1e-8);
    }
}

TEST_CASE("C_0 form is invariant under reflection")
{
    // f(x) = e^{-(x - 0.3)^2} and its mirror image.
    TestFunction f{[](double x) { return std::exp(-(x - 0.3) * (x - 0.3)); },
                   [](double x) { return -2.0 * (x - 0.3) * std::exp(-(x - 0.3) * (x - 0.3)); }, 1.0};
    TestFunction m{[](double x) { return std::exp(-(x + 0.3) * (x + 0.3)); },
                   [](double x) { return -2.0 * (x + 0.3) * std::exp(-(x + 0.3) * (x + 0.3)); }, 1.0};
    CHECK(c0_form(f).value == doctest::Approx(c0_form(m).value).epsilon(1e-11));
}

TEST_CASE("Coulomb-model form")
{
    const auto odd = test_functions::odd_gaussian();
    CHECK(vc_form(odd, Radius(0.1)).value == c0_form(odd).value);
    const auto e = test_functions::exponential();
    CHECK(vc_form(e, Radius(2.0)).value == doctest::Approx(c0_exponential).epsilon(1e-10));
    const double expected = -2.0 * std::log(0.05) + c0_exponential;
    CHECK(vc_form(e, Radius(0.1)).value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(expected == doctest::Approx(3.4508).epsilon(1e-4));
}

TEST_CASE("effective-potential form")
{
    const auto odd = test_functions::odd_gaussian();
    const double c0 = c0_form(odd).value;
    const double a = veff_form(odd, Radius(0.1)).value;
    const double b = veff_form(odd, Radius(0.01)).value;
    CHECK(std::abs(b - c0) < std::abs(a - c0));
    CHECK(std::abs(b - c0) < 0.05);

    const auto g = test_functions::gaussian();
    const auto v = veff_form(g, Radius(0.1));
    CHECK(std::isfinite(v.value));
    CHECK(v.value > 0.0);
    QuadratureSpec fine;
    fine.abs_tol = 1e-15;
    fine.rel_tol = 1e-14;
    CHECK(std::abs(veff_form(g, Radius(0.1), fine).value - v.value) < 1e-9);
}

TEST_CASE("form residual decays with r")
{
    const auto g = test_functions::gaussian();
    double previous = std::abs(form_residual(g, Radius(0.1)));
    for (double rv : {0.01, 0.001, 1e-4}) {
        const double now = std::abs(form_residual(g, Radius(rv)));
        CHECK(now < previous);
        previous = now;
    }
    const auto odd = test_functions::odd_gaussian();
    CHECK(std::abs(form_residual(odd, Radius(1e-3))) < std::abs(form_residual(odd, Radius(0.1))));
    CHECK(std::isfinite(form_residual(g, Radius(1.0))));
}
