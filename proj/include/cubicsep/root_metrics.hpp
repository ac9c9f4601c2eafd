#pragma once

#include "cubicsep/int_polynomial.hpp"
#include "cubicsep/partition.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cubicsep {

/// Axis-aligned complex box [re_lo, re_hi] x [im_lo, im_hi] holding one root.
struct ComplexBox {
    Rational re_lo, re_hi, im_lo, im_hi;

    Interval re() const { return {re_lo, re_hi}; }
    Interval im() const { return {im_lo, im_hi}; }
    bool is_real() const { return im_lo == 0 && im_hi == 0; }
    bool disjoint(const ComplexBox& o) const
    {
        return re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo;
    }
};

/// Certified boxes for the three roots of a cubic with nonzero discriminant.
/// Real roots come first in increasing order; a conjugate pair follows as
/// (upper, lower). Each box has width at most 2^-bits * (1 + |root|).
std::array<ComplexBox, 3> root_enclosures(const IntPolynomial& p, unsigned bits);

/// Interval Horner evaluation of p over the box; true when both parts contain 0.
bool box_contains_zero(const IntPolynomial& p, const ComplexBox& box);

struct SepEnclosure {
    Rational lo, hi;
    Interval interval() const { return {lo, hi}; }
};

/// Minimum distance between two roots of a cubic, relative width at most 2^-bits.
SepEnclosure separation(const IntPolynomial& p, unsigned bits);

struct DepressedCubic {
    IntPolynomial rstar;
    Integer p_dep, q_dep;
};

/// R* = 27 b3^2 R(x - b2/(3 b3)) = 27 b3^3 x^3 + 3 b3 p x + q. Both discriminant
/// identities are checked before returning.
DepressedCubic depress(const IntPolynomial& r);

struct SurveyParams {
    long b_max = 1;
    long h_max = 1;
    Rational s{1, 2};
    Rational t{1, 2};
    std::size_t keep = 20;
    unsigned bits = 24;
};

struct SurveyRecord {
    IntPolynomial poly;
    Integer B;
    Rational A;
    Rational sep_lo, sep_hi;
    Rational score_lo, score_hi;
};

struct SurveyResult {
    /// The `keep` smallest scores, ordered by (score_lo, score_hi, coefficients).
    std::vector<SurveyRecord> records;
    std::optional<Interval> min_score;
    /// Minimum of sep * H^2 and the cubic attaining the smallest lower end.
    std::optional<Interval> min_mahler;
    std::optional<IntPolynomial> mahler_poly;
    std::size_t examined = 0;
    std::size_t reducible = 0;
    std::size_t singular = 0;
};

/// Irreducible squarefree cubics with 1 <= b3 <= b_max and H <= h_max, one per
/// class under x -> -x and P -> -P: b3 > 0 and the first nonzero of (b2, b0) is
/// positive. Work is sliced by the (b3, b2) pair.
SurveyResult sep_survey(const SurveyParams& params, const Partition& part = {});
SurveyResult merge_surveys(const std::vector<SurveyResult>& parts, std::size_t keep);
SurveyResult sep_survey_parallel(const SurveyParams& params, unsigned partitions, unsigned workers);

}  // namespace cubicsep
