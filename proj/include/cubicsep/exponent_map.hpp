#pragma once

#include "cubicsep/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cubicsep {

enum class Provenance { liouville, st_map, hall_conditional, outer_bound };
const char* provenance_name(Provenance p);

struct ExponentPair {
    Rational u, v;
    Provenance provenance;
    bool operator==(const ExponentPair&) const = default;
};

struct LiouvillePoint {
    ExponentPair pair;
    /// (d + 1)^-r (r + 1)^-d
    Rational constant;
};

LiouvillePoint liouville_pair(long d, long r);

/// (2(1 + s)/(s + t), 2 + s/(s + t)) for s, t > 0.
ExponentPair st_to_uv(const Rational& s, const Rational& t);

/// (2r + 2(1 - r)/(1/2 - eps), 2 + r) for 0 < eps < 1/2 and 1/2 + eps <= r <= 1.
ExponentPair hall_family_uv(const Rational& eps, const Rational& r);

/// 10 - 3v for 2 <= v <= 3.
Rational outer_bound_u(const Rational& v);

struct RegionRow {
    Rational v;
    Rational outer_u;
    /// Conditional point on the Hall family at this v, when v >= 5/2 + eps.
    std::optional<Rational> inner_u;
    bool liouville = false;
};

/// Rows for v = 2 + i/(grid - 1), i = 0 .. grid - 1.
std::vector<RegionRow> region_report(const Rational& eps, long grid_points);

}  // namespace cubicsep
