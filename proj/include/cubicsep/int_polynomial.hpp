#pragma once

#include "cubicsep/numeric.hpp"

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cubicsep {

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
/// coeffs()[i] is the coefficient of x^i; the zero polynomial has no stored coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs_low_first);
    /// Coefficients listed from the leading term down, e.g. {1, 0, 0, -2} is x^3 - 2.
    static IntPolynomial from_leading(std::vector<Integer> coeffs_high_first);
    static IntPolynomial from_leading(std::initializer_list<long> coeffs_high_first);
    /// Parses the "a3,a2,a1,a0" text form (leading coefficient first).
    static IntPolynomial parse(std::string_view text);

    const std::vector<Integer>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; 0 for constants and for the zero polynomial.
    int degree() const { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }
    Integer coeff(int i) const;
    Integer leading() const;
    /// Naive height: max absolute coefficient.
    Integer height() const;
    Integer content() const;
    IntPolynomial primitive_part() const;
    /// Primitive part with positive leading coefficient.
    IntPolynomial normalized() const;

    IntPolynomial derivative() const;
    /// P(x + k).
    IntPolynomial taylor_shift(const Integer& k) const;
    /// P(c * x).
    IntPolynomial scale_argument(const Integer& c) const;
    /// x^deg * P(1/x).
    IntPolynomial reversed() const;
    IntPolynomial operator-() const;

    Rational eval(const Rational& x) const;
    /// Exact q^deg * P(p/q) for q >= 1.
    Integer eval_scaled(const Integer& p, const Integer& q) const;
    int sign_at(const Rational& x) const;

    /// "a3,a2,a1,a0" (leading first).
    std::string to_string() const;

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const Integer& k);
    bool operator==(const IntPolynomial&) const = default;

private:
    void trim();
    std::vector<Integer> coeffs_;
};

/// Classical cubic discriminant 18abcd - 4b^3d + b^2c^2 - 4ac^3 - 27a^2d^2.
Integer poly_discriminant(const IntPolynomial& p);

/// q^deg * P(p/q) for a rational in lowest terms.
Integer eval_scaled(const IntPolynomial& p, const Rational& x);

/// Primitive gcd over Z[x] (positive leading coefficient).
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);
bool is_squarefree(const IntPolynomial& p);

/// An interval isolating exactly one real root of poly. The root lies in the open
/// interval (lo, hi), or equals lo when lo == hi.
struct RealRootInterval {
    Rational lo;
    Rational hi;
    IntPolynomial poly;

    bool is_exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Interval enclosure() const { return {lo, hi}; }
    /// Sign of poly just to the right of lo.
    int sign_right_of_lo() const;
    /// -1, 0, +1 as the root is below, equal to, or above x.
    int compare(const Rational& x) const;
};

/// Isolates every real root of a squarefree polynomial by sign-variation bisection
/// seeded with the root bound 1 + H/|lead|. Result is sorted and pairwise disjoint.
std::vector<RealRootInterval> isolate_real_roots(const IntPolynomial& p);

/// Bisects until width <= max_width. Exact roots collapse to a point.
void refine(RealRootInterval& root, const Rational& max_width);
/// Same, with max_width = 2^-bits.
void refine_bits(RealRootInterval& root, unsigned bits);

/// Roots of p contained in the closed interval [lo, hi], as isolating intervals inside it.
std::vector<RealRootInterval> roots_in(const IntPolynomial& p, const Rational& lo, const Rational& hi);

/// All rational roots of a squarefree-or-not polynomial with nonzero leading coefficient.
std::vector<Rational> rational_roots(const IntPolynomial& p);

/// True iff the primitive part of a cubic has no rational root.
bool is_irreducible_cubic(const IntPolynomial& p);

}  // namespace cubicsep
