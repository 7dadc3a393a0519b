// Backward integration of the Whittaker equation for W_{alpha,1/2}.
//
// The integrator works with h(z) = e^{z/2} W(z), which satisfies
//     h'' = h' - (alpha / z) h,
// and carries I(z) = int_z^{z_top} W^2 along as a third component. Integrating
// toward smaller z, the recessive solution (h ~ z^alpha) grows relative to the
// dominant one (h ~ e^z z^-alpha), so the recurrence is stable.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "exciton/errors.hpp"
#include "exciton/specfun.hpp"

namespace exciton::specfun {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kSeedTolerance = 1e-10;
constexpr int kMaxSteps = 2'000'000;

using State = std::array<double, 3>; // h, h', I

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - (-92097.0 / 339200), e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

struct Rhs {
    double alpha;
    State operator()(double z, const State& y) const
    {
        return {y[1], y[1] - alpha * y[0] / z, -std::exp(-z) * y[0] * y[0]};
    }
};

struct Seed {
    State state;
    double rel_error;
};

// W ~ e^{-z/2} z^alpha sum_k c_k z^{-k},  c_{k+1} = -c_k (k+1-alpha)(k-alpha)/(k+1)
Seed asymptotic_seed(double alpha, double z)
{
    double sum = 1.0;
    double dsum = 0.0;
    double c = 1.0;
    double smallest = std::numeric_limits<double>::infinity();
    double last = 1.0;
    for (int k = 0; k < 400; ++k) {
        c = -c * (k + 1.0 - alpha) * (k - alpha) / (k + 1.0);
        const double term = c * std::pow(z, -(k + 1.0));
        if (term == 0.0) {
            smallest = 0.0;
            break;
        }
        if (std::abs(term) > std::abs(last) && k > 0) {
            break; // asymptotic series has started to diverge
        }
        sum += term;
        dsum += -(k + 1.0) * term / z;
        last = term;
        smallest = std::abs(term);
        if (smallest < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    const double za = std::pow(z, alpha);
    const double h = za * sum;
    const double dh = alpha * za / z * sum + za * dsum;
    return {{h, dh, 0.0}, smallest / std::max(std::abs(sum), 1e-300)};
}

} // namespace

WhittakerTrace whittaker_trace(double alpha, std::span<const double> z, double z_top)
{
    if (z.empty()) {
        return {};
    }
    for (double zi : z) {
        if (!(zi > 0.0) || !std::isfinite(zi)) {
            throw_domain("whittaker_w", "argument z = " + std::to_string(zi) + " must be positive");
        }
    }
    const double z_max_req = *std::max_element(z.begin(), z.end());
    if (z_top <= 0.0) {
        z_top = std::max(40.0, z_max_req + 30.0);
    } else if (z_top < z_max_req) {
        throw ConfigError("whittaker_trace: z_top below requested abscissa");
    }

    const auto seed = asymptotic_seed(alpha, z_top);
    if (!(seed.rel_error < kSeedTolerance)) {
        throw AccuracyError("whittaker_w: asymptotic seed not converged at z_max = " + std::to_string(z_top) +
                            " for alpha = " + std::to_string(alpha));
    }

    std::vector<std::size_t> order(z.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return z[i] > z[j]; });

    WhittakerTrace out;
    out.points.resize(z.size());
    const Rhs f{alpha};

    State y = seed.state;
    double zc = z_top;
    double step = -0.05 * std::max(1.0, std::sqrt(z_top));
    double w_max = std::abs(std::exp(-0.5 * zc) * y[0]);
    double dw_max = std::abs(std::exp(-0.5 * zc) * (y[1] - 0.5 * y[0]));
    int steps = 0;

    auto record = [&](std::size_t idx) {
        const double scale = std::exp(-0.5 * zc);
        out.points[idx] = {zc, scale * y[0], scale * (y[1] - 0.5 * y[0])};
    };

    for (std::size_t idx : order) {
        const double target = z[idx];
        while (zc > target) {
            if (++steps > kMaxSteps) {
                throw AccuracyError("whittaker_w: step budget exhausted near z = " + std::to_string(zc));
            }
            double dz = std::max(step, -0.5 * zc);
            const bool clamped = zc + dz <= target;
            if (clamped) {
                dz = target - zc;
            }

            const State k1 = f(zc, y);
            State t;
            for (int i = 0; i < 3; ++i) t[i] = y[i] + dz * a21 * k1[i];
            const State k2 = f(zc + c2 * dz, t);
            for (int i = 0; i < 3; ++i) t[i] = y[i] + dz * (a31 * k1[i] + a32 * k2[i]);
            const State k3 = f(zc + c3 * dz, t);
            for (int i = 0; i < 3; ++i) t[i] = y[i] + dz * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            const State k4 = f(zc + c4 * dz, t);
            for (int i = 0; i < 3; ++i)
                t[i] = y[i] + dz * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            const State k5 = f(zc + c5 * dz, t);
            for (int i = 0; i < 3; ++i)
                t[i] = y[i] + dz * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            const State k6 = f(zc + dz, t);
            State next;
            for (int i = 0; i < 3; ++i)
                next[i] = y[i] + dz * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            const State k7 = f(zc + dz, next);

            // Error weights are set on the scale of W, not h, so that the
            // exponential growth of h toward large z does not loosen accuracy
            // near the origin.
            const double grow = std::exp(0.5 * (zc + dz));
            const double sc_h = kRelTol * (std::max(std::abs(y[0]), std::abs(next[0])) + grow * w_max);
            const double sc_dh =
                kRelTol * (std::max(std::abs(y[1]), std::abs(next[1])) + grow * (w_max + dw_max));
            const double sc_i = kRelTol * (std::abs(next[2]) + w_max * w_max);
            double err = 0.0;
            const State scale = {sc_h, sc_dh, sc_i};
            for (int i = 0; i < 3; ++i) {
                const double e =
                    dz * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                err = std::max(err, std::abs(e) / scale[i]);
            }

            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                zc = clamped ? target : zc + dz;
                y = next;
                const double s = std::exp(-0.5 * zc);
                w_max = std::max(w_max, std::abs(s * y[0]));
                dw_max = std::max(dw_max, std::abs(s * (y[1] - 0.5 * y[0])));
                if (!clamped) {
                    step = dz * factor;
                }
            } else {
                step = dz * factor;
            }
        }
        record(idx);
    }

    out.square_integral = y[2];
    out.est_rel_error = 10.0 * kRelTol + seed.rel_error;
    out.steps = steps;
    return out;
}

} // namespace exciton::specfun
