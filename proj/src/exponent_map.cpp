#include "cubicsep/exponent_map.hpp"

namespace cubicsep {

const char* provenance_name(Provenance p)
{
    switch (p) {
    case Provenance::liouville:
        return "liouville";
    case Provenance::st_map:
        return "st_map";
    case Provenance::hall_conditional:
        return "hall_conditional";
    case Provenance::outer_bound:
        return "outer_bound";
    }
    return "?";
}

LiouvillePoint liouville_pair(long d, long r)
{
    if (d < 1 || r < 1 || d == r)
        throw DomainError("liouville_pair needs d, r >= 1 and d != r");
    Rational c = make_rational(1, pow(Integer(d + 1), static_cast<unsigned long>(r)) *
                                      pow(Integer(r + 1), static_cast<unsigned long>(d)));
    return {{Rational(r), Rational(d), Provenance::liouville}, c};
}

ExponentPair st_to_uv(const Rational& s, const Rational& t)
{
    if (sign(s) <= 0 || sign(t) <= 0)
        throw DomainError("st_to_uv needs s, t > 0");
    const Rational sum = s + t;
    return {2 * (1 + s) / sum, 2 + s / sum, Provenance::st_map};
}

ExponentPair hall_family_uv(const Rational& eps, const Rational& r)
{
    if (sign(eps) <= 0 || eps >= Rational(1, 2))
        throw DomainError("hall_family_uv needs 0 < eps < 1/2");
    if (r < Rational(1, 2) + eps || r > 1)
        throw DomainError("hall_family_uv needs 1/2 + eps <= r <= 1");
    return {2 * r + 2 * (1 - r) / (Rational(1, 2) - eps), 2 + r, Provenance::hall_conditional};
}

Rational outer_bound_u(const Rational& v)
{
    if (v < 2 || v > 3)
        throw DomainError("outer_bound_u needs 2 <= v <= 3");
    return 10 - 3 * v;
}

std::vector<RegionRow> region_report(const Rational& eps, long grid_points)
{
    if (sign(eps) <= 0 || eps >= Rational(1, 2))
        throw DomainError("region_report needs 0 < eps < 1/2");
    if (grid_points < 2)
        throw DomainError("region_report needs at least 2 grid points");
    std::vector<RegionRow> rows;
    for (long i = 0; i < grid_points; ++i) {
        RegionRow row;
        row.v = 2 + make_rational(i, grid_points - 1);
        row.outer_u = outer_bound_u(row.v);
        if (row.v >= Rational(5, 2) + eps)
            row.inner_u = hall_family_uv(eps, row.v - 2).u;
        row.liouville = row.v == 3;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cubicsep
