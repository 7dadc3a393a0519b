#include "exciton/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace exciton {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

std::vector<double> affine(const std::vector<double>& a, const std::vector<double>& b, double t)
{
    // a + t (b - a)
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
    return out;
}

double diameter(const std::vector<Vertex>& s)
{
    double d = 0.0;
    for (std::size_t v = 1; v < s.size(); ++v) {
        double sq = 0.0;
        for (std::size_t i = 0; i < s[0].x.size(); ++i) {
            const double di = s[v].x[i] - s[0].x[i];
            sq += di * di;
        }
        d = std::max(d, std::sqrt(sq));
    }
    return d;
}

} // namespace

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const SimplexOptions& options)
{
    const std::size_t n = start.size();
    std::vector<Vertex> s;
    s.push_back({start, f(start)});
    for (std::size_t i = 0; i < n; ++i) {
        auto x = start;
        x[i] += options.initial_step;
        s.push_back({x, f(x)});
    }
    const auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

    SimplexResult result;
    int it = 0;
    for (; it < options.max_iterations; ++it) {
        std::stable_sort(s.begin(), s.end(), by_value);
        const double spread = s.back().f - s.front().f;
        if (diameter(s) < options.diameter_tol && spread < options.value_tol) {
            result.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += s[v].x[i] / static_cast<double>(n);
            }
        }
        Vertex& worst = s.back();
        const auto xr = affine(centroid, worst.x, -1.0);
        const double fr = f(xr);
        if (fr < s.front().f) {
            const auto xe = affine(centroid, worst.x, -2.0);
            const double fe = f(xe);
            worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr < s[n - 1].f) {
            worst = {xr, fr};
            continue;
        }
        const bool outside = fr < worst.f;
        const auto xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, worst.x, 0.5);
        const double fc = f(xc);
        if (fc < std::min(fr, worst.f)) {
            worst = {xc, fc};
            continue;
        }
        for (std::size_t v = 1; v <= n; ++v) {
            s[v].x = affine(s[0].x, s[v].x, 0.5);
            s[v].f = f(s[v].x);
        }
    }
    std::stable_sort(s.begin(), s.end(), by_value);
    result.point = s.front().x;
    result.value = s.front().f;
    result.iterations = it;
    result.diameter = diameter(s);
    return result;
}

} // namespace exciton
