// Compiled with -mavx2 (no FMA): every lane reproduces the scalar sequence.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace cogsim::simd {

namespace {

using namespace detail;

__m256d exp_avx2(__m256d x) {
    const __m256d too_big = _mm256_cmp_pd(x, _mm256_set1_pd(kExpMax), _CMP_GT_OQ);
    const __m256d too_small = _mm256_cmp_pd(x, _mm256_set1_pd(kExpMin), _CMP_LT_OQ);
    const __m256d is_nan = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
    const __m256d safe = _mm256_blendv_pd(x, _mm256_setzero_pd(),
                                          _mm256_or_pd(_mm256_or_pd(too_big, too_small), is_nan));

    const __m256d px = _mm256_floor_pd(
        _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kLog2e), safe), _mm256_set1_pd(0.5)));
    __m256d r = _mm256_sub_pd(safe, _mm256_mul_pd(px, _mm256_set1_pd(kLn2Hi)));
    r = _mm256_sub_pd(r, _mm256_mul_pd(px, _mm256_set1_pd(kLn2Lo)));
    const __m256d xx = _mm256_mul_pd(r, r);

    __m256d p = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kExpP0), xx), _mm256_set1_pd(kExpP1));
    p = _mm256_add_pd(_mm256_mul_pd(p, xx), _mm256_set1_pd(kExpP2));
    p = _mm256_mul_pd(r, p);
    __m256d q = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(kExpQ0), xx), _mm256_set1_pd(kExpQ1));
    q = _mm256_add_pd(_mm256_mul_pd(q, xx), _mm256_set1_pd(kExpQ2));
    q = _mm256_add_pd(_mm256_mul_pd(q, xx), _mm256_set1_pd(kExpQ3));
    __m256d y = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    y = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(_mm256_set1_pd(2.0), y));

    const __m128i n32 = _mm256_cvtpd_epi32(px);
    __m256i bits = _mm256_add_epi64(_mm256_cvtepi32_epi64(n32), _mm256_set1_epi64x(1023));
    bits = _mm256_slli_epi64(bits, 52);
    y = _mm256_mul_pd(y, _mm256_castsi256_pd(bits));

    y = _mm256_blendv_pd(y, _mm256_setzero_pd(), too_small);
    y = _mm256_blendv_pd(y, _mm256_set1_pd(__builtin_inf()), too_big);
    return _mm256_blendv_pd(y, x, is_nan);
}

inline void store_mask(int bits, std::uint8_t* out) {
    out[0] = static_cast<std::uint8_t>(bits & 1);
    out[1] = static_cast<std::uint8_t>((bits >> 1) & 1);
    out[2] = static_cast<std::uint8_t>((bits >> 2) & 1);
    out[3] = static_cast<std::uint8_t>((bits >> 3) & 1);
}

void in_range_avx2(double x0, double y0, const double* xs, const double* ys, std::size_t n,
                   double range_sq, std::uint8_t* out) {
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vy0 = _mm256_set1_pd(y0);
    const __m256d vr2 = _mm256_set1_pd(range_sq);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + k), vx0);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + k), vy0);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        store_mask(_mm256_movemask_pd(_mm256_cmp_pd(d2, vr2, _CMP_LE_OQ)), out + k);
    }
    if (k < n) scalar_table.in_range(x0, y0, xs + k, ys + k, n - k, range_sq, out + k);
}

inline __m256d load_popularity(const std::uint32_t* p) {
    return _mm256_cvtepi32_pd(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
}

std::size_t expired_avx2(double now, double f_min, const double* last,
                         const std::uint32_t* popularity, std::size_t n, std::uint8_t* out) {
    const __m256d vnow = _mm256_set1_pd(now);
    const __m256d vfmin = _mm256_set1_pd(f_min);
    std::size_t count = 0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d elapsed = _mm256_sub_pd(vnow, _mm256_loadu_pd(last + k));
        const __m256d limit = _mm256_mul_pd(load_popularity(popularity + k), vfmin);
        const int bits = _mm256_movemask_pd(_mm256_cmp_pd(elapsed, limit, _CMP_GE_OQ));
        store_mask(bits, out + k);
        count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
    }
    if (k < n) count += scalar_table.expired(now, f_min, last + k, popularity + k, n - k, out + k);
    return count;
}

double decay_sum_avx2(double now, double gamma, const double* last,
                      const std::uint32_t* popularity, std::size_t n) {
    const __m256d vnow = _mm256_set1_pd(now);
    const __m256d vgamma = _mm256_set1_pd(gamma);
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d beta = _mm256_div_pd(vgamma, load_popularity(popularity + k));
        const __m256d elapsed = _mm256_sub_pd(vnow, _mm256_loadu_pd(last + k));
        const __m256d arg = _mm256_xor_pd(_mm256_mul_pd(beta, elapsed), sign);
        acc = _mm256_add_pd(acc, exp_avx2(arg));
    }
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d pair = _mm_add_pd(lo, hi);  // (a0 + a2, a1 + a3)
    double total = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
    for (; k < n; ++k) {
        total += scalar_table.decay_sum(now, gamma, last + k, popularity + k, 1);
    }
    return total;
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, &in_range_avx2, &expired_avx2, &decay_sum_avx2};
}

}  // namespace cogsim::simd
