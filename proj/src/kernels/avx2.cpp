#include "cubicsep/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define CUBICSEP_X86 1
#endif

namespace cubicsep::kernels {

#ifdef CUBICSEP_X86

void hall_gap_avx2(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta)
{
    alignas(32) double xd[4], yd[4], dd[4];
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int k = 0; k < 4; ++k)
            xd[k] = static_cast<double>(x[i + k]);
        __m256d vx = _mm256_load_pd(xd);
        __m256d cube = _mm256_mul_pd(_mm256_mul_pd(vx, vx), vx);
        __m256d base = _mm256_floor_pd(_mm256_sqrt_pd(cube));
        __m256d best_y = base;
        __m256d best_d = _mm256_set1_pd(1e300);
        for (int off = -1; off <= 2; ++off) {
            __m256d cand = _mm256_add_pd(base, _mm256_set1_pd(off));
            __m256d d = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(cube, _mm256_mul_pd(cand, cand)));
            __m256d better = _mm256_cmp_pd(d, best_d, _CMP_LT_OQ);
            best_d = _mm256_blendv_pd(best_d, d, better);
            best_y = _mm256_blendv_pd(best_y, cand, better);
        }
        _mm256_store_pd(yd, best_y);
        _mm256_store_pd(dd, best_d);
        for (int k = 0; k < 4; ++k) {
            y[i + k] = static_cast<std::uint64_t>(yd[k]);
            delta[i + k] = static_cast<std::uint64_t>(dd[k]);
        }
    }
    if (i < n)
        hall_gap_scalar(x + i, n - i, y + i, delta + i);
}

void form_eval_avx2(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out)
{
    const double qd = static_cast<double>(q);
    const __m256d a3 = _mm256_set1_pd(static_cast<double>(a[3]));
    const __m256d c2 = _mm256_set1_pd(static_cast<double>(a[2]) * qd);
    const __m256d c1 = _mm256_set1_pd(static_cast<double>(a[1]) * qd * qd);
    const __m256d c0 = _mm256_set1_pd(static_cast<double>(a[0]) * qd * qd * qd);
    const __m256d step = _mm256_set1_pd(4.0);
    __m256d p = _mm256_setr_pd(static_cast<double>(p0), static_cast<double>(p0 + 1), static_cast<double>(p0 + 2),
                               static_cast<double>(p0 + 3));
    alignas(32) double buf[4];
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_add_pd(_mm256_mul_pd(a3, p), c2);
        v = _mm256_add_pd(_mm256_mul_pd(v, p), c1);
        v = _mm256_add_pd(_mm256_mul_pd(v, p), c0);
        _mm256_store_pd(buf, v);
        for (int k = 0; k < 4; ++k)
            out[i + k] = static_cast<std::int64_t>(buf[k]);
        p = _mm256_add_pd(p, step);
    }
    if (i < n)
        form_eval_scalar(a, q, p0 + static_cast<std::int64_t>(i), n - i, out + i);
}

#else

void hall_gap_avx2(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta)
{
    hall_gap_scalar(x, n, y, delta);
}

void form_eval_avx2(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out)
{
    form_eval_scalar(a, q, p0, n, out);
}

#endif

}  // namespace cubicsep::kernels
