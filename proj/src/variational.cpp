#include "exciton/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "exciton/errors.hpp"
#include "exciton/kernels.hpp"
#include "exciton/nelder_mead.hpp"
#include "exciton/specfun.hpp"

namespace exciton::variational {

namespace {

using kernels::TrialShape;

// Scaled coordinates u = x/k, v = y/q on the quadrant [0, U] x [0, Vm]. The
// rectangle is cut along its diagonal into two triangles, each swept by rays
// from the origin: A = {v = p t, u = p}, B = {u = p t, v = p}, with area
// element p dp dt. Along a ray every integrand is smooth (the cusp of the
// trial and the 1/distance singularity sit at p = 0 and are cancelled by p).
// The slope t is mapped as t = beta sinh(s) so that the anisotropy scale
// beta is resolved while large slopes are spaced logarithmically.
struct NodeSet {
    std::vector<double> x, y, w, chord2;
};

void sweep_triangle(bool u_along_ray, double p_max, double t_max, double beta, double k, double q, double r,
                    const QuadratureSpec& quad, NodeSet& out)
{
    const auto& rule = gauss_legendre(quad.gauss_order);
    const double s_max = std::asinh(t_max / beta);
    const double ds = s_max / quad.angular_panels;
    const double drho = quad.tail_extent / quad.radial_panels;
    std::vector<double> breaks;
    std::vector<double> pn, pw;
    for (int a = 0; a < quad.angular_panels; ++a) {
        for (int i = 0; i < quad.gauss_order; ++i) {
            const double s = ds * (a + 0.5 + 0.5 * rule.nodes[i]);
            const double t = beta * std::sinh(s);
            const double wt = 0.5 * ds * rule.weights[i] * beta * std::cosh(s);
            // Ray panels of fixed width in rho = p sqrt(1 + t^2).
            const double stretch = std::sqrt(1.0 + t * t);
            const double dp = drho / stretch;
            breaks.clear();
            for (double b = 0.0; b < p_max; b += dp) {
                breaks.push_back(b);
            }
            breaks.push_back(p_max);
            pn.clear();
            pw.clear();
            append_composite_rule(breaks, quad.gauss_order, pn, pw);
            for (std::size_t j = 0; j < pn.size(); ++j) {
                const double p = pn[j];
                const double u = u_along_ray ? p : p * t;
                const double v = u_along_ray ? p * t : p;
                const double x = k * u;
                const double y = q * v;
                const double sn = std::sin(y / (2.0 * r));
                out.x.push_back(x);
                out.y.push_back(y);
                out.w.push_back(k * q * p * pw[j] * wt);
                out.chord2.push_back(4.0 * r * r * sn * sn);
            }
        }
    }
}

EnergyBreakdown energy(TrialShape shape, Radius radius, const TrialParams& p, const QuadratureSpec& quad)
{
    p.validate();
    if (quad.gauss_order < 1 || quad.radial_panels < 1 || quad.angular_panels < 1 || !(quad.tail_extent > 0.0)) {
        throw ConfigError("variational quadrature: panel counts and extent must be positive");
    }
    const double r = radius.value();
    const double u_max = quad.tail_extent;
    const double v_max = std::min(std::numbers::pi * r / p.q, quad.tail_extent);

    NodeSet nodes;
    sweep_triangle(true, u_max, v_max / u_max, std::min(1.0, p.k / p.q), p.k, p.q, r, quad, nodes);
    sweep_triangle(false, v_max, u_max / v_max, std::min(1.0, p.q / p.k), p.k, p.q, r, quad, nodes);

    const kernels::TrialNodes view{nodes.x, nodes.y, nodes.w, nodes.chord2};
    const auto sums = kernels::trial_moments(view, p.k, p.q, shape);
    EnergyBreakdown e;
    // Four quadrants by symmetry in x and y.
    e.norm = 4.0 * sums.norm;
    e.kinetic = 4.0 * sums.kinetic;
    e.potential = 4.0 * sums.potential;
    if (!(e.norm > 0.0) || !std::isfinite(e.norm) || !std::isfinite(e.kinetic) || !std::isfinite(e.potential)) {
        throw AccuracyError("variational energy: quadrature produced N = " + std::to_string(e.norm) +
                            " at k = " + std::to_string(p.k) + ", q = " + std::to_string(p.q));
    }
    e.energy = (e.kinetic - e.potential) / e.norm;
    return e;
}

VariationalResult minimize(TrialShape shape, Radius r, const QuadratureSpec& quad, std::optional<TrialParams> init)
{
    constexpr double kLogBound = 25.0;
    const auto objective = [&](const std::vector<double>& z) {
        if (std::abs(z[0]) > kLogBound || std::abs(z[1]) > kLogBound) {
            return std::numeric_limits<double>::max();
        }
        try {
            return energy(shape, r, {std::exp(z[0]), std::exp(z[1])}, quad).energy;
        } catch (const AccuracyError&) {
            return std::numeric_limits<double>::max();
        }
    };

    std::vector<TrialParams> seeds;
    if (init) {
        init->validate();
        seeds.push_back(*init);
    } else {
        seeds = {{3.0, 3.0}, {1.0, r.value()}, {1.0, 1.0}};
    }

    SimplexOptions options;
    std::optional<SimplexResult> best;
    for (const auto& seed : seeds) {
        auto res = nelder_mead(objective, {std::log(seed.k), std::log(seed.q)}, options);
        if (!best || res.value < best->value) {
            best = std::move(res);
        }
    }
    VariationalResult out;
    out.params = {std::exp(best->point[0]), std::exp(best->point[1])};
    out.breakdown = energy(shape, r, out.params, quad);
    out.iterations = best->iterations;
    out.converged = best->converged;
    return out;
}

double envelope(double x, double y, const TrialParams& p)
{
    return std::exp(-std::sqrt(x * x / (p.k * p.k) + y * y / (p.q * p.q)));
}

} // namespace

void TrialParams::validate() const
{
    if (!(k > 0.0) || !(q > 0.0) || !std::isfinite(k) || !std::isfinite(q)) {
        throw_domain("TrialParams", "k = " + std::to_string(k) + ", q = " + std::to_string(q));
    }
}

double trial_2p(double x, double y, const TrialParams& p) { return x * envelope(x, y, p); }

double trial_1s(double x, double y, const TrialParams& p) { return envelope(x, y, p); }

EnergyBreakdown energy_2p(Radius r, const TrialParams& p, const QuadratureSpec& quad)
{
    return energy(TrialShape::odd_x, r, p, quad);
}

EnergyBreakdown energy_1s(Radius r, const TrialParams& p, const QuadratureSpec& quad)
{
    return energy(TrialShape::even, r, p, quad);
}

VariationalResult minimize_2p(Radius r, const QuadratureSpec& quad, std::optional<TrialParams> init)
{
    return minimize(TrialShape::odd_x, r, quad, init);
}

VariationalResult minimize_1s(Radius r, const QuadratureSpec& quad, std::optional<TrialParams> init)
{
    return minimize(TrialShape::even, r, quad, init);
}

double small_r_correction(Radius r)
{
    const double x = r.value();
    if (!(x < 1.0)) {
        throw_domain("small_r_correction", "needs 0 < r < 1, got " + std::to_string(x));
    }
    return -1.0 - 8.0 * (1.0 + specfun::euler_gamma + std::log(x)) * x * x;
}

} // namespace exciton::variational
