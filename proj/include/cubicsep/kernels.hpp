#pragma once
// Batch kernels for the exhaustive scans. Each has a scalar reference and an
// AVX2 variant; dispatch picks one at runtime.

#include <cstddef>
#include <cstdint>

namespace cubicsep::kernels {

/// Largest x for which the double-precision variants are exact (x^3 < 2^53).
inline constexpr std::uint64_t kHallDoubleLimit = 208063;
/// Largest x handled by the 128-bit scalar kernel.
inline constexpr std::uint64_t kHallWideLimit = std::uint64_t(1) << 40;

/// For each x[i] >= 1: y[i] minimizing |x^3 - y^2| and delta[i] = that minimum.
/// Scalar needs x <= kHallWideLimit, AVX2 needs x <= kHallDoubleLimit.
void hall_gap_scalar(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta);
void hall_gap_avx2(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta);

/// out[i] = a3 p^3 + a2 p^2 q + a1 p q^2 + a0 q^3 for p = p0 + i, with a = {a0, a1, a2, a3}.
/// Scalar needs every partial sum below 2^62 in magnitude, AVX2 below 2^53.
void form_eval_scalar(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out);
void form_eval_avx2(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out);

enum class Isa { scalar, avx2 };

bool cpu_has_avx2();
/// The variant dispatch currently selects. CUBICSEP_ISA=scalar forces the reference path.
Isa active_isa();
const char* isa_name(Isa isa);

/// Dispatching entry points. hall_gap uses AVX2 only when every x is within
/// kHallDoubleLimit and needs x <= kHallWideLimit. form_eval returns false
/// without writing when the values may reach 2^62.
void hall_gap(const std::uint64_t* x, std::size_t n, std::uint64_t* y, std::uint64_t* delta);
bool form_eval(const std::int64_t* a, std::int64_t q, std::int64_t p0, std::size_t n, std::int64_t* out);

/// Bound on |a3| P^3 + |a2| P^2 q + |a1| P q^2 + |a0| q^3 for |p| <= P, saturating at 2^63 - 1.
std::uint64_t form_bound(const std::int64_t* a, std::int64_t q, std::int64_t max_abs_p);

}  // namespace cubicsep::kernels
