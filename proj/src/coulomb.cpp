#include "exciton/coulomb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exciton/errors.hpp"
#include "exciton/specfun.hpp"

namespace exciton::coulomb {

namespace {

constexpr double kBracketDelta = 1e-9;
constexpr double kGroundLower = 1e-12;
constexpr double kNormFloor = 1e-12;
constexpr double kFdStep = 1e-4;

bool is_integer(double a) { return a == std::floor(a); }

double whittaker_norm_integral(double alpha)
{
    // Tail beyond z_top is below e^{-z} z^{2 alpha} ~ 1e-25 for alpha <= 5.
    const double z_top = 60.0 + 10.0 * std::max(alpha, 0.0);
    const double zs[] = {kNormFloor};
    const auto trace = specfun::whittaker_trace(alpha, zs, z_top);
    const double w0 = trace.points[0].value;
    return trace.square_integral + kNormFloor * w0 * w0;
}

std::string bracket_diagnostic(int n, Radius r)
{
    std::ostringstream os;
    os << "even_alpha: no sign change of the even condition on (" << n - 1 << ", " << n
       << ") at r = " << r.value() << "; scan found " << count_sign_changes(n - 1, r)
       << " sign changes";
    return os.str();
}

} // namespace

StateLabel StateLabel::make(int n, Parity parity)
{
    if (n < 1) {
        throw_domain("StateLabel", "principal index must be >= 1");
    }
    if (parity == Parity::odd && n < 2) {
        throw_domain("StateLabel", "there is no 1p state");
    }
    return {n, parity};
}

StateLabel StateLabel::parse(std::string_view text)
{
    if (text.size() < 2) {
        throw_domain("StateLabel", "cannot parse '" + std::string(text) + "'");
    }
    const char kind = text.back();
    const std::string digits(text.substr(0, text.size() - 1));
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        (kind != 's' && kind != 'p')) {
        throw_domain("StateLabel", "cannot parse '" + std::string(text) + "'");
    }
    return make(std::stoi(digits), kind == 's' ? Parity::even : Parity::odd);
}

std::string StateLabel::str() const
{
    return std::to_string(n) + (parity == Parity::even ? "s" : "p");
}

double even_condition(double alpha, Radius r)
{
    if (!(alpha > 0.0)) {
        throw_domain("even_condition", "alpha must be positive");
    }
    if (is_integer(alpha)) {
        throw_domain("even_condition", "alpha = " + std::to_string(alpha) + " is a digamma pole");
    }
    return specfun::digamma(1.0 - alpha).value + 2.0 * specfun::euler_gamma + 0.5 / alpha -
           std::log(alpha) + std::log(r.value());
}

int count_sign_changes(int interval, Radius r, int points)
{
    const double lo = interval + 1e-6;
    const double hi = interval + 1.0 - 1e-6;
    int changes = 0;
    double prev = even_condition(lo, r);
    for (int i = 1; i < points; ++i) {
        const double a = lo + (hi - lo) * i / (points - 1);
        const double v = even_condition(a, r);
        if ((prev > 0.0) != (v > 0.0)) {
            ++changes;
        }
        prev = v;
    }
    return changes;
}

EigenSolution make_even_state(double alpha, Radius r)
{
    if (!(alpha > 0.0) || is_integer(alpha)) {
        throw_domain("make_even_state", "alpha must be positive and non-integer");
    }
    EigenSolution sol;
    sol.label = StateLabel::make(static_cast<int>(std::ceil(alpha)), Parity::even);
    sol.alpha = alpha;
    sol.energy = -1.0 / (alpha * alpha);
    sol.norm_const = 1.0 / std::sqrt(2.0 * whittaker_norm_integral(alpha));
    sol.r = r.value();
    return sol;
}

EigenSolution even_alpha(int n, Radius r, double tol)
{
    if (n < 1) {
        throw_domain("even_alpha", "n must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw_domain("even_alpha", "tolerance must be positive");
    }
    auto f = [&](double a) { return even_condition(a, r); };

    // Both ends sit next to digamma poles (the lower one, for n = 1, next to
    // the 1/(2 alpha) blow-up): +inf on the left, -inf on the right.
    double delta = kBracketDelta;
    double lo = 0.0;
    double hi = 0.0;
    double flo = 0.0;
    double fhi = 0.0;
    for (;;) {
        lo = n == 1 ? kGroundLower : (n - 1) + delta;
        hi = n - delta;
        flo = f(lo);
        fhi = f(hi);
        if (flo > 0.0 && fhi < 0.0) {
            break;
        }
        delta *= 1e-3;
        if (delta < 1e-15) {
            throw RootNotFoundError(bracket_diagnostic(n, r));
        }
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double fm = f(mid);
        if (fm > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }

    // Secant polish inside the final bracket.
    double best = std::abs(flo) < std::abs(fhi) ? lo : hi;
    double fbest = std::min(std::abs(flo), std::abs(fhi));
    double a0 = lo;
    double a1 = hi;
    double f0 = flo;
    double f1 = fhi;
    for (int i = 0; i < 3 && f1 != f0; ++i) {
        const double a2 = a1 - f1 * (a1 - a0) / (f1 - f0);
        if (!(a2 >= lo && a2 <= hi)) {
            break;
        }
        const double f2 = f(a2);
        if (std::abs(f2) < fbest) {
            best = a2;
            fbest = std::abs(f2);
        }
        a0 = a1;
        f0 = f1;
        a1 = a2;
        f1 = f2;
    }

    auto sol = make_even_state(best, r);
    sol.label = StateLabel::make(n, Parity::even);
    return sol;
}

EigenSolution odd_solution(int n, Radius r)
{
    if (n < 2) {
        throw_domain("odd_solution", "odd states start at n = 2 (no 1p state)");
    }
    const double big_n = n - 1.0;
    EigenSolution sol;
    sol.label = StateLabel::make(n, Parity::odd);
    sol.alpha = big_n;
    sol.energy = -1.0 / (big_n * big_n);
    // int (z e^{-|z|/2} L^1_{N-1}(|z|))^2 dz = 4 N^2
    sol.norm_const = 1.0 / (2.0 * big_n);
    sol.r = r.value();
    return sol;
}

std::vector<EigenSolution> spectrum(Radius r, int count, double tol)
{
    if (count < 1) {
        throw_domain("spectrum", "count must be >= 1");
    }
    std::vector<EigenSolution> out;
    out.reserve(count);
    out.push_back(even_alpha(1, r, tol));
    for (int n = 2; static_cast<int>(out.size()) < count; ++n) {
        out.push_back(odd_solution(n, r));
        if (static_cast<int>(out.size()) < count) {
            out.push_back(even_alpha(n, r, tol));
        }
    }
    return out;
}

double eigenfunction(const EigenSolution& sol, double z)
{
    const double az = std::abs(z);
    if (sol.label.parity == Parity::odd) {
        const int big_n = sol.label.n - 1;
        return sol.norm_const * std::exp(-0.5 * az) * z * specfun::laguerre1(big_n - 1, az);
    }
    if (az == 0.0) {
        return sol.norm_const / std::tgamma(1.0 - sol.alpha);
    }
    return sol.norm_const * specfun::whittaker_w(sol.alpha, az).value;
}

double eigenfunction_derivative(const EigenSolution& sol, double z)
{
    const double az = std::abs(z);
    if (sol.label.parity == Parity::odd) {
        // z L^1_{n}'(z) = n L^1_n - (n+1) L^1_{n-1}; the derivative is even in z.
        const int big_n = sol.label.n - 1;
        const double l1 = specfun::laguerre1(big_n - 1, az);
        const double l0 = big_n >= 2 ? specfun::laguerre1(big_n - 2, az) : 0.0;
        return sol.norm_const * std::exp(-0.5 * az) * ((big_n - 0.5 * az) * l1 - big_n * l0);
    }
    if (az == 0.0) {
        throw_domain("eigenfunction_derivative", "even states have a logarithmic cusp at z = 0");
    }
    const double zs[] = {az};
    const auto trace = specfun::whittaker_trace(sol.alpha, zs);
    const double d = sol.norm_const * trace.points[0].derivative;
    return z > 0.0 ? d : -d;
}

double eigenfunction_x(const EigenSolution& sol, double x)
{
    return std::sqrt(2.0 / sol.alpha) * eigenfunction(sol, 2.0 * x / sol.alpha);
}

namespace {

// psi at x - h, x, x + h for every sample, even states from one trajectory.
std::vector<double> stencil_values(const EigenSolution& sol, std::span<const double> coords, double h,
                                   double to_z, double prefactor)
{
    std::vector<double> zs;
    zs.reserve(3 * coords.size());
    for (double c : coords) {
        for (int s = -1; s <= 1; ++s) {
            zs.push_back((c + s * h) * to_z);
        }
    }
    std::vector<double> values(zs.size());
    if (sol.label.parity == Parity::odd) {
        for (std::size_t i = 0; i < zs.size(); ++i) {
            values[i] = prefactor * eigenfunction(sol, zs[i]);
        }
        return values;
    }
    std::vector<double> abs_z(zs.size());
    std::transform(zs.begin(), zs.end(), abs_z.begin(), [](double v) { return std::abs(v); });
    const auto trace = specfun::whittaker_trace(sol.alpha, abs_z);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        values[i] = prefactor * sol.norm_const * trace.points[i].value;
    }
    return values;
}

void require_away_from_origin(std::span<const double> samples, double h, const char* where)
{
    for (double c : samples) {
        if (!(std::abs(c) > 2.0 * h)) {
            throw_domain(where, "samples must avoid a neighbourhood of the origin");
        }
    }
}

} // namespace

double ode_residual(const EigenSolution& sol, std::span<const double> x_samples)
{
    const double h = kFdStep;
    require_away_from_origin(x_samples, h, "ode_residual");
    const auto v = stencil_values(sol, x_samples, h, 2.0 / sol.alpha, std::sqrt(2.0 / sol.alpha));
    double worst = 0.0;
    double peak = 0.0;
    for (std::size_t j = 0; j < x_samples.size(); ++j) {
        const double x = x_samples[j];
        const double psi = v[3 * j + 1];
        const double d2 = (v[3 * j] - 2.0 * psi + v[3 * j + 2]) / (h * h);
        worst = std::max(worst, std::abs(-d2 - 2.0 * psi / std::abs(x) - sol.energy * psi));
        peak = std::max(peak, std::abs(psi));
    }
    return peak > 0.0 ? worst / peak : worst;
}

double ode_residual_scaled(const EigenSolution& sol, std::span<const double> z_samples)
{
    const double h = 2.0 * kFdStep / sol.alpha;
    require_away_from_origin(z_samples, h, "ode_residual_scaled");
    const auto v = stencil_values(sol, z_samples, h, 1.0, 1.0);
    double worst = 0.0;
    double peak = 0.0;
    for (std::size_t j = 0; j < z_samples.size(); ++j) {
        const double z = z_samples[j];
        const double psi = v[3 * j + 1];
        const double d2 = (v[3 * j] - 2.0 * psi + v[3 * j + 2]) / (h * h);
        worst = std::max(worst, std::abs(d2 - 0.25 * psi + sol.alpha * psi / std::abs(z)));
        peak = std::max(peak, std::abs(psi));
    }
    return peak > 0.0 ? worst / peak : worst;
}

BoundaryResidual boundary_residual(const EigenSolution& sol, Radius r, double epsilon)
{
    if (!(epsilon > 0.0)) {
        throw_domain("boundary_residual", "epsilon must be positive");
    }
    const double dm = eigenfunction_derivative(sol, -epsilon);
    const double dp = eigenfunction_derivative(sol, epsilon);
    const double psi0 = eigenfunction(sol, 0.0);
    const double a = sol.alpha;
    const double value =
        0.5 * (dm - dp) + a * (std::log(r.value()) - std::log(a * epsilon)) * psi0;
    return {value, epsilon};
}

double ground_asymptote(Radius r)
{
    if (!(r.value() < 1.0)) {
        throw_domain("ground_asymptote", "requires 0 < r < 1");
    }
    const double l = std::log(r.value());
    return -4.0 * l * l;
}

} // namespace exciton::coulomb
