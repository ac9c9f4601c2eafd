#include "cubicsep/kernels.hpp"

#include <cmath>

namespace cubicsep::kernels {

namespace {

using u128 = unsigned __int128;

std::uint64_t isqrt(u128 n)
{
    auto y = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (u128(y) * y > n)
        --y;
    while (u128(y + 1) * (y + 1) <= n)
        ++y;
    return y;
}

}  // namespace

void hall_gap_scalar(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta)
{
    for (std::size_t i = 0; i < n; ++i) {
        const u128 c = u128(x[i]) * x[i] * x[i];
        const std::uint64_t r = isqrt(c);
        const u128 lo = c - u128(r) * r;
        const u128 hi = u128(r + 1) * (r + 1) - c;
        if (lo <= hi) {
            y[i] = r;
            delta[i] = static_cast<std::uint64_t>(lo);
        } else {
            y[i] = r + 1;
            delta[i] = static_cast<std::uint64_t>(hi);
        }
    }
}

void form_eval_scalar(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out)
{
    const std::int64_t c2 = a[2] * q;
    const std::int64_t c1 = a[1] * q * q;
    const std::int64_t c0 = a[0] * q * q * q;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t p = p0 + static_cast<std::int64_t>(i);
        out[i] = ((a[3] * p + c2) * p + c1) * p + c0;
    }
}

std::uint64_t form_bound(const std::int64_t* a, std::int64_t q, std::int64_t max_abs_p)
{
    long double P = static_cast<long double>(max_abs_p), Q = static_cast<long double>(q);
    long double b = std::fabs(static_cast<long double>(a[3])) * P * P * P +
                    std::fabs(static_cast<long double>(a[2])) * P * P * Q +
                    std::fabs(static_cast<long double>(a[1])) * P * Q * Q +
                    std::fabs(static_cast<long double>(a[0])) * Q * Q * Q;
    // long double keeps 64 mantissa bits, so values below 2^63 are bounded tightly; pad by one part in 2^40.
    b *= 1.0L + 0x1p-40L;
    if (b >= 0x1p63L)
        return UINT64_MAX >> 1;
    return static_cast<std::uint64_t>(b) + 1;
}

}  // namespace cubicsep::kernels
