#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubicsep {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an input violates an operation's precondition.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a truncated series or enclosure cannot answer the question asked of it.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "p", "p/q" or a finite decimal such as "-0.49" into an exact rational.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Canonical rendering: "num/den", or just "num" when den == 1.
std::string to_string(const Integer& z);
std::string to_string(const Rational& r);

int sign(const Integer& z);
int sign(const Rational& r);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);
Rational abs(const Rational& r);
Integer abs(const Integer& z);

Integer pow(const Integer& base, unsigned long exp);
Rational pow(const Rational& base, long exp);

/// Bit length of |z| (0 for z == 0).
std::size_t bit_length(const Integer& z);

/// Closed interval [lo, hi] with exact rational endpoints.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    explicit Interval(const Rational& point) : lo(point), hi(point) {}
    Interval(Rational lo_, Rational hi_);

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return sign(lo) <= 0 && sign(hi) >= 0; }
    bool is_point() const { return lo == hi; }

    /// True when hi <= lo * (1 + 2^-bits); requires lo > 0.
    bool relative_width_within(unsigned bits) const;

    bool operator==(const Interval&) const = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Rational& k);
/// Throws DomainError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);
Interval abs(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);

/// "[lo,hi]" with canonical rational endpoints.
std::string to_string(const Interval& iv);

/// Enclosure of sqrt(x) for x >= 0 with absolute width at most 2^-bits.
Interval sqrt_enclosure(const Rational& x, unsigned bits);
/// Enclosure of sqrt over every point of a nonnegative interval.
Interval sqrt_enclosure(const Interval& x, unsigned bits);
/// Enclosure of x^(1/n) for x >= 0, absolute width at most 2^-bits.
Interval root_enclosure(const Rational& x, unsigned long n, unsigned bits);
/// Enclosure of base^exponent for base > 0 and rational exponent, relative width about 2^-bits.
Interval pow_enclosure(const Rational& base, const Rational& exponent, unsigned bits);

}  // namespace cubicsep
