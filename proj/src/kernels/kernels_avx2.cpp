#include <cmath>
#include <cstdint>

#include "exciton/kernels.hpp"
#include "exp_constants.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define EXCITON_HAVE_AVX2_PATH 1
#include <immintrin.h>
#else
#define EXCITON_HAVE_AVX2_PATH 0
#endif

namespace exciton::kernels::avx2 {

#if EXCITON_HAVE_AVX2_PATH

#define EXCITON_AVX2 __attribute__((target("avx2")))

namespace {

EXCITON_AVX2 inline __m256d abs_pd(__m256d v)
{
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

EXCITON_AVX2 inline double hsum(__m256d v)
{
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

// Lane-wise twin of kernels::exp_neg.
EXCITON_AVX2 inline __m256d exp_neg_pd(__m256d x)
{
    using namespace detail;
    x = _mm256_max_pd(x, _mm256_set1_pd(kExpFloor));
    const __m256d n =
        _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, _mm256_set1_pd(kLn2Hi)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(n, _mm256_set1_pd(kLn2Lo)));
    __m256d p = _mm256_set1_pd(kExpCoeff[0]);
    for (int i = 1; i < kExpDegree - 1; ++i) {
        p = _mm256_add_pd(_mm256_mul_pd(p, r), _mm256_set1_pd(kExpCoeff[i]));
    }
    const __m256d one = _mm256_set1_pd(1.0);
    p = _mm256_add_pd(_mm256_mul_pd(p, r), one);
    p = _mm256_add_pd(_mm256_mul_pd(p, r), one);
    // 2^n: n + 1.5 * 2^52 leaves n in the low mantissa bits.
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);
    __m256i bits = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
    bits = _mm256_slli_epi64(_mm256_add_epi64(bits, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
}

} // namespace

bool compiled() { return true; }

EXCITON_AVX2 void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                               std::span<const double> shifts, std::span<int> counts, double pivmin)
{
    const std::size_t n = diag.size();
    const __m256d piv = _mm256_set1_pd(pivmin);
    const __m256d neg_piv = _mm256_set1_pd(-pivmin);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t s = 0;
    for (; s + 4 <= shifts.size(); s += 4) {
        const __m256d shift = _mm256_loadu_pd(&shifts[s]);
        __m256i count = _mm256_setzero_si256();
        __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), shift);
        q = _mm256_blendv_pd(q, neg_piv, _mm256_cmp_pd(abs_pd(q), piv, _CMP_LT_OQ));
        count = _mm256_sub_epi64(count, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
        for (std::size_t i = 1; i < n; ++i) {
            const __m256d d = _mm256_sub_pd(_mm256_set1_pd(diag[i]), shift);
            q = _mm256_sub_pd(d, _mm256_div_pd(_mm256_set1_pd(offdiag_sq[i - 1]), q));
            q = _mm256_blendv_pd(q, neg_piv, _mm256_cmp_pd(abs_pd(q), piv, _CMP_LT_OQ));
            count = _mm256_sub_epi64(count, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
        }
        alignas(32) std::int64_t lanes[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
        for (int l = 0; l < 4; ++l) {
            counts[s + l] = static_cast<int>(lanes[l]);
        }
    }
    if (s < shifts.size()) {
        scalar::sturm_counts(diag, offdiag_sq, shifts.subspan(s), counts.subspan(s), pivmin);
    }
}

EXCITON_AVX2 MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape)
{
    const double ik2s = 1.0 / (k * k);
    const double iq2s = 1.0 / (q * q);
    const __m256d ik2 = _mm256_set1_pd(ik2s);
    const __m256d iq2 = _mm256_set1_pd(iq2s);
    const __m256d two = _mm256_set1_pd(2.0);
    const bool odd = shape == TrialShape::odd_x;
    const __m256d dg = _mm256_set1_pd(odd ? 1.0 : 0.0);
    const __m256d sign = _mm256_set1_pd(-0.0);

    __m256d acc_n = _mm256_setzero_pd();
    __m256d acc_k = _mm256_setzero_pd();
    __m256d acc_v = _mm256_setzero_pd();
    const std::size_t size = nodes.x.size();
    std::size_t i = 0;
    for (; i + 4 <= size; i += 4) {
        const __m256d x = _mm256_loadu_pd(&nodes.x[i]);
        const __m256d y = _mm256_loadu_pd(&nodes.y[i]);
        const __m256d w = _mm256_loadu_pd(&nodes.w[i]);
        const __m256d c2 = _mm256_loadu_pd(&nodes.chord2[i]);
        const __m256d xx = _mm256_mul_pd(x, x);
        const __m256d rho =
            _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(xx, ik2), _mm256_mul_pd(_mm256_mul_pd(y, y), iq2)));
        const __m256d e = exp_neg_pd(_mm256_xor_pd(rho, sign));
        const __m256d g = odd ? x : _mm256_set1_pd(1.0);
        const __m256d phi = _mm256_mul_pd(g, e);
        const __m256d phi2 = _mm256_mul_pd(phi, phi);
        const __m256d dx =
            _mm256_mul_pd(e, _mm256_sub_pd(dg, _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(g, x), ik2), rho)));
        const __m256d dy = _mm256_xor_pd(
            _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(e, g), y), iq2), rho), sign);
        acc_n = _mm256_add_pd(acc_n, _mm256_mul_pd(w, phi2));
        acc_k = _mm256_add_pd(acc_k, _mm256_mul_pd(w, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy))));
        const __m256d dist = _mm256_sqrt_pd(_mm256_add_pd(xx, c2));
        acc_v = _mm256_add_pd(acc_v, _mm256_mul_pd(w, _mm256_div_pd(_mm256_mul_pd(two, phi2), dist)));
    }
    MomentSums sums{hsum(acc_n), hsum(acc_k), hsum(acc_v)};
    if (i < size) {
        const TrialNodes rest{nodes.x.subspan(i), nodes.y.subspan(i), nodes.w.subspan(i), nodes.chord2.subspan(i)};
        const auto tail = scalar::trial_moments(rest, k, q, shape);
        sums.norm += tail.norm;
        sums.kinetic += tail.kinetic;
        sums.potential += tail.potential;
    }
    return sums;
}

EXCITON_AVX2 void v_eff_batch(std::span<const double> x, double r, std::span<double> out)
{
    const __m256d four_r2 = _mm256_set1_pd(4.0 * r * r);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const __m256d xv = _mm256_loadu_pd(&x[i]);
        const __m256d rho = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(xv, xv), four_r2));
        __m256d a = _mm256_set1_pd(1.0);
        __m256d b = _mm256_div_pd(abs_pd(xv), rho);
        for (int it = 0; it < detail::kAgmIterations; ++it) {
            const __m256d next_a = _mm256_mul_pd(half, _mm256_add_pd(a, b));
            b = _mm256_sqrt_pd(_mm256_mul_pd(a, b));
            a = next_a;
        }
        _mm256_storeu_pd(&out[i], _mm256_div_pd(two, _mm256_mul_pd(rho, _mm256_add_pd(a, b))));
    }
    if (i < x.size()) {
        scalar::v_eff_batch(x.subspan(i), r, out.subspan(i));
    }
}

#else

bool compiled() { return false; }

void sturm_counts(std::span<const double> diag, std::span<const double> offdiag_sq,
                  std::span<const double> shifts, std::span<int> counts, double pivmin)
{
    scalar::sturm_counts(diag, offdiag_sq, shifts, counts, pivmin);
}

MomentSums trial_moments(const TrialNodes& nodes, double k, double q, TrialShape shape)
{
    return scalar::trial_moments(nodes, k, q, shape);
}

void v_eff_batch(std::span<const double> x, double r, std::span<double> out)
{
    scalar::v_eff_batch(x, r, out);
}

#endif

} // namespace exciton::kernels::avx2
