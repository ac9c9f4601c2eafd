#pragma once

#include "cubicsep/numeric.hpp"
#include "cubicsep/partition.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace cubicsep {

struct HallRecord {
    Integer x, y, delta;
    /// Enclosure of sqrt(x) / delta with 64 fractional bits on sqrt(x).
    Interval ratio;
};

/// The y minimizing |x^3 - y^2| and the gap; nullopt when x^3 is a square.
std::optional<HallRecord> hall_delta(const Integer& x);

/// delta < x^(1/2 - eps), decided exactly.
bool hall_passes(const Integer& x, const Integer& delta, const Rational& eps);

/// Every x in [1, x_max] with 0 < delta < x^(1/2 - eps), ordered by ratio
/// descending then x. Slices are blocks of kHallBlock consecutive x.
inline constexpr std::uint64_t kHallBlock = 4096;
std::vector<HallRecord> hall_scan(std::uint64_t x_max, const Rational& eps, const Partition& part = {});
std::vector<HallRecord> merge_hall(const std::vector<std::vector<HallRecord>>& parts);
std::vector<HallRecord> hall_scan_parallel(std::uint64_t x_max, const Rational& eps, unsigned partitions,
                                           unsigned workers);

/// |27 * 16 * (4p^3 + 27q^2)| and |(108q)^2 - (-12p)^3|.
std::pair<Integer, Integer> hall_bridge(const Integer& p, const Integer& q);

using FormCoeffs = std::array<Integer, 4>;  // a0, a1, a2, a3

/// F_a(p, q) = a3 p^3 + a2 p^2 q + a1 p q^2 + a0 q^3.
Integer thue_eval(const FormCoeffs& a, const Integer& p, const Integer& q);

struct ThueRecord {
    FormCoeffs a;
    Integer p, q, value;
    /// |value| * N^(4 + 2 eps) / q^(1/2 - eps) with N = max |a_i|.
    Interval score;
};

struct ThueResult {
    /// Records with score < 1, ordered by (score lo, score hi, a, q, p).
    std::vector<ThueRecord> records;
    /// Smallest score over every scanned (a, p, q) with F != 0.
    std::optional<ThueRecord> minimum;
    std::uint64_t evaluated = 0;
};

/// Every a with 0 < max|a_i| <= a_max, 1 <= q <= q_max, |p| <= 2q(1 + a_max), gcd(p, q) = 1.
/// Slices are taken over the coefficient vectors.
ThueResult thue_scan(long a_max, long q_max, const Rational& eps, const Partition& part = {});
ThueResult merge_thue(const std::vector<ThueResult>& parts);
ThueResult thue_scan_parallel(long a_max, long q_max, const Rational& eps, unsigned partitions, unsigned workers);

}  // namespace cubicsep
