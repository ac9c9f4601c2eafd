#include "cubicsep/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <string_view>

namespace cubicsep::kernels {

bool cpu_has_avx2()
{
#if defined(__x86_64__) || defined(_M_X64)
    static const bool has = __builtin_cpu_supports("avx2");
    return has;
#else
    return false;
#endif
}

Isa active_isa()
{
    static const Isa isa = [] {
        if (const char* env = std::getenv("CUBICSEP_ISA"); env && std::string_view(env) == "scalar")
            return Isa::scalar;
        return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
    }();
    return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void hall_gap(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta)
{
    std::uint64_t top = 0;
    for (std::size_t i = 0; i < n; ++i)
        top = x[i] > top ? x[i] : top;
    if (active_isa() == Isa::avx2 && top <= kHallDoubleLimit)
        hall_gap_avx2(x, n, y, delta);
    else
        hall_gap_scalar(x, n, y, delta);
}

bool form_eval(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out)
{
    if (n == 0)
        return true;
    const std::int64_t last = p0 + static_cast<std::int64_t>(n) - 1;
    const std::int64_t reach = std::max(p0 < 0 ? -p0 : p0, last < 0 ? -last : last);
    const std::uint64_t bound = form_bound(a, q, reach);
    if (bound >= (std::uint64_t(1) << 62))
        return false;
    if (active_isa() == Isa::avx2 && bound < (std::uint64_t(1) << 53))
        form_eval_avx2(a, q, p0, n, out);
    else
        form_eval_scalar(a, q, p0, n, out);
    return true;
}

}  // namespace cubicsep::kernels
