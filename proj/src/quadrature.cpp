#include "exciton/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "exciton/errors.hpp"

namespace exciton {

QuadratureSpec QuadratureSpec::refined() const
{
    QuadratureSpec r = *this;
    r.radial_panels *= 2;
    r.angular_panels *= 2;
    return r;
}

namespace {

GaussRule build_gauss_legendre(int n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[n / 2] = 0.0;
    }
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n)
{
    if (n < 1) {
        throw ConfigError("gauss_legendre: order must be >= 1");
    }
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<GaussRule>(n == 1 ? GaussRule{{0.0}, {2.0}} : build_gauss_legendre(n));
    }
    return *slot;
}

void append_composite_rule(std::span<const double> breaks, int n, std::vector<double>& nodes,
                           std::vector<double>& weights)
{
    const auto& rule = gauss_legendre(n);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p];
        const double b = breaks[p + 1];
        if (!(b > a)) {
            continue;
        }
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        for (int i = 0; i < n; ++i) {
            nodes.push_back(c + h * rule.nodes[i]);
            weights.push_back(h * rule.weights[i]);
        }
    }
}

} // namespace exciton
