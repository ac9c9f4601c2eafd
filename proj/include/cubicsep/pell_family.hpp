#pragma once

#include "cubicsep/algebraic_cf.hpp"
#include "cubicsep/exponent_map.hpp"

#include <optional>
#include <vector>

namespace cubicsep {

struct PellPair {
    long n;
    Integer u, v;
    /// 2u^2 - v^2.
    Integer norm;
    /// u_{n-1} v_n - v_{n-1} u_n; 0 at n = 0.
    Integer cross;
};

/// u: 1, 2, 5, 12, ...; v: 1, 3, 7, 17, ...; both with w_{n+1} = 2 w_n + w_{n-1}.
std::vector<PellPair> pell_seq(long n_max);

struct FamilyMember {
    long n;
    IntPolynomial poly;
    /// p_n / q_n in lowest terms, and the gcd that was removed.
    Rational approx;
    Integer removed_gcd;
    Integer A;
    Integer u, v, u_prev;
};

/// P_n = u x^3 + (5u + u') x^2 - 2(3v - u') x - 2v with u' = u_{n-1}.
FamilyMember family_member(long n);

/// The root of P_n in [1, 2], next to sqrt(2).
AlgebraicReal family_root(const FamilyMember& m);

struct IdentityRow {
    long n;
    Integer value;  // q^3 P(p/q)
    bool magnitude_two;
    bool irreducible;
    /// q^3 u prod(p/q - xi_i) computed over root boxes contains value.
    bool factor_check;
};

struct IdentityReport {
    std::vector<IdentityRow> rows;
    bool all() const;
};

IdentityReport verify_family_identity(long n_max, unsigned workers = 1);

/// 1, n twos, 4, 2n+1 twos, 3, A_n, 1, 1, 2n+1 twos, 1, 1, 1, 2n+1 twos, 1, 1.
std::vector<Integer> predicted_cf_prefix(long n);

struct CFMatch {
    long n;
    std::vector<Integer> predicted, actual;
    /// First index where they differ.
    std::optional<std::size_t> mismatch;
    /// The chosen root lies within 1/2 of sqrt(2) and nowhere near the other roots.
    bool root_selection;
    bool full() const { return !mismatch && root_selection; }
};

CFMatch verify_cf_pattern(long n);

struct ClosenessRow {
    long n;
    Integer q, H;
    /// |xi - p/q| q^3 v.
    Interval ratio;
    /// H(P_n) / v_n.
    Rational height_ratio;
};

struct ClosenessTable {
    std::vector<ClosenessRow> rows;
    /// Points (u, v) = (10 - 3v, v) on the boundary the family attains.
    std::vector<ExponentPair> line;
};

ClosenessTable closeness_exponents(long n_max, unsigned bits = 32);

}  // namespace cubicsep
