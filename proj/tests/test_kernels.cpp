#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "exciton/kernels.hpp"
#include "exciton/potential.hpp"

using namespace exciton;
using namespace exciton::kernels;

namespace {
bool avx2_available() { return detected_isa() == Isa::avx2; }

std::vector<double> random_values(std::size_t n, double lo, double hi, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = d(rng);
    }
    return v;
}
} // namespace

TEST_CASE("ISA selection")
{
    set_isa_override(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    set_isa_override(Isa::avx2);
    CHECK(active_isa() == (avx2_available() ? Isa::avx2 : Isa::scalar));
    set_isa_override(std::nullopt);
    CHECK(isa_name(Isa::scalar) == "scalar");
    CHECK(isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("polynomial exponential")
{
    double worst = 0.0;
    for (double x = -700.0; x <= 0.0; x += 0.173) {
        worst = std::max(worst, std::abs(exp_neg(x) - std::exp(x)) / std::exp(x));
    }
    CHECK(worst < 4e-16);
    CHECK(exp_neg(0.0) == 1.0);
}

TEST_CASE("effective potential kernel matches the library closed form")
{
    const auto x = random_values(1001, -30.0, 30.0, 7);
    for (double r : {1e-3, 0.1, 2.0}) {
        std::vector<double> out(x.size());
        scalar::v_eff_batch(x, r, out);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(out[i] == doctest::Approx(potential::v_eff(x[i], Radius(r))).epsilon(1e-14));
        }
    }
}

TEST_CASE("AVX2 effective potential is lane-exact")
{
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; skipped");
        return;
    }
    const auto x = random_values(1003, -5.0, 5.0, 11);
    std::vector<double> a(x.size()), b(x.size());
    scalar::v_eff_batch(x, 0.1, a);
    avx2::v_eff_batch(x, 0.1, b);
    CHECK(a == b);
}

TEST_CASE("AVX2 Sturm counts agree with scalar")
{
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; skipped");
        return;
    }
    const auto diag = random_values(500, -3.0, 3.0, 3);
    const std::vector<double> off_sq(499, 1.0);
    auto shifts = random_values(67, -6.0, 6.0, 5);
    shifts.push_back(diag[0]); // exact zero pivot
    std::vector<int> a(shifts.size()), b(shifts.size());
    scalar::sturm_counts(diag, off_sq, shifts, a, 1e-300);
    avx2::sturm_counts(diag, off_sq, shifts, b, 1e-300);
    CHECK(a == b);
    CHECK(std::is_sorted(a.begin(), a.end()) == false); // shifts are unsorted
}

TEST_CASE("AVX2 trial moments agree with scalar")
{
    if (!avx2_available()) {
        MESSAGE("AVX2 not available; skipped");
        return;
    }
    const std::size_t n = 4099;
    const auto x = random_values(n, 1e-3, 20.0, 17);
    const auto y = random_values(n, 0.0, 0.3, 19);
    const auto w = random_values(n, 0.0, 1e-2, 23);
    std::vector<double> c2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = std::sin(y[i] / 0.2);
        c2[i] = 0.04 * s * s;
    }
    const TrialNodes nodes{x, y, w, c2};
    for (auto shape : {TrialShape::odd_x, TrialShape::even}) {
        const auto a = scalar::trial_moments(nodes, 1.3, 0.7, shape);
        const auto b = avx2::trial_moments(nodes, 1.3, 0.7, shape);
        CHECK(b.norm == doctest::Approx(a.norm).epsilon(1e-13));
        CHECK(b.kinetic == doctest::Approx(a.kinetic).epsilon(1e-13));
        CHECK(b.potential == doctest::Approx(a.potential).epsilon(1e-13));
    }
}
