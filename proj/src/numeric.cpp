#include "cubicsep/numeric.hpp"

#include <algorithm>
#include <cctype>

namespace cubicsep {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer parse_integer(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw DomainError("empty integer");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size() || !std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw DomainError("malformed integer: " + s);
    if (s[0] == '+')
        s.erase(0, 1);
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text)
{
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        std::string digits(whole);
        if (digits.empty() || digits == "-" || digits == "+")
            digits += "0";
        digits += frac;
        if (frac.empty())
            throw DomainError("malformed decimal: " + std::string(text));
        Integer num = parse_integer(digits);
        if (negative && num > 0)
            num = -num;
        return make_rational(num, pow(Integer(10), frac.size()));
    }
    return Rational(parse_integer(text));
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& r) { return r.get_str(10); }

int sign(const Integer& z) { return sgn(z); }
int sign(const Rational& r) { return sgn(r); }

Integer floor(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }
Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }

Integer pow(const Integer& base, unsigned long exp)
{
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

Rational pow(const Rational& base, long exp)
{
    if (exp < 0) {
        if (base == 0)
            throw DomainError("zero to a negative power");
        return pow(Rational(1 / base), -exp);
    }
    auto e = static_cast<unsigned long>(exp);
    return make_rational(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
}

std::size_t bit_length(const Integer& z)
{
    return z == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_))
{
    if (lo > hi)
        throw std::logic_error("interval with lo > hi");
}

bool Interval::relative_width_within(unsigned bits) const
{
    if (sign(lo) <= 0)
        return false;
    Integer scale = pow(Integer(2), bits);
    return hi * scale <= lo * (scale + 1);
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    auto [mn, mx] = std::minmax_element(std::begin(p), std::end(p));
    return {*mn, *mx};
}

Interval operator*(const Interval& a, const Rational& k)
{
    return k >= 0 ? Interval(a.lo * k, a.hi * k) : Interval(a.hi * k, a.lo * k);
}

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains_zero())
        throw DomainError("interval division by an interval containing zero");
    return a * Interval(1 / b.hi, 1 / b.lo);
}

Interval abs(const Interval& a)
{
    if (sign(a.lo) >= 0)
        return a;
    if (sign(a.hi) <= 0)
        return -a;
    return {Rational(0), std::max(Rational(-a.lo), a.hi)};
}

Interval hull(const Interval& a, const Interval& b)
{
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval min(const Interval& a, const Interval& b)
{
    return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::string to_string(const Interval& iv) { return "[" + to_string(iv.lo) + "," + to_string(iv.hi) + "]"; }

Interval root_enclosure(const Rational& x, unsigned long n, unsigned bits)
{
    if (x < 0)
        throw DomainError("root of a negative number");
    if (n == 0)
        throw DomainError("zeroth root");
    // x^(1/n) = (num * den^(n-1))^(1/n) / den; scale by 2^bits inside the root.
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    Integer radicand = num * pow(den, n - 1) * pow(Integer(2), static_cast<unsigned long>(bits) * n);
    Integer r;
    mpz_root(r.get_mpz_t(), radicand.get_mpz_t(), n);
    Integer scale = den * pow(Integer(2), bits);
    bool exact = pow(r, n) == radicand;
    return {make_rational(r, scale), make_rational(exact ? r : Integer(r + 1), scale)};
}

Interval sqrt_enclosure(const Rational& x, unsigned bits) { return root_enclosure(x, 2, bits); }

Interval sqrt_enclosure(const Interval& x, unsigned bits)
{
    if (x.lo < 0)
        throw DomainError("sqrt of an interval reaching below zero");
    return {sqrt_enclosure(x.lo, bits).lo, sqrt_enclosure(x.hi, bits).hi};
}

namespace {

// Guard bits so that an absolute 2^-k enclosure of a value near v has relative width ~2^-bits.
unsigned absolute_bits_for(const Rational& approx, unsigned bits)
{
    long mag = static_cast<long>(bit_length(approx.get_num())) - static_cast<long>(bit_length(approx.get_den()));
    long need = static_cast<long>(bits) + 8 - std::min(mag, 0L);
    return static_cast<unsigned>(std::max(need, 8L));
}

}  // namespace

Interval pow_enclosure(const Rational& base, const Rational& exponent, unsigned bits)
{
    if (base <= 0)
        throw DomainError("pow_enclosure needs a positive base");
    const Integer& e_num = exponent.get_num();
    const Integer& e_den = exponent.get_den();
    if (!e_num.fits_slong_p() || !e_den.fits_ulong_p())
        throw DomainError("exponent too large");
    Rational powered = pow(base, e_num.get_si());
    unsigned long n = e_den.get_ui();
    if (n == 1)
        return Interval(powered);
    // magnitude of the root ~ 2^(log2(powered)/n)
    long mag = (static_cast<long>(bit_length(powered.get_num())) - static_cast<long>(bit_length(powered.get_den()))) /
               static_cast<long>(n);
    Rational approx = mag >= 0 ? Rational(pow(Integer(2), static_cast<unsigned long>(mag)))
                               : make_rational(1, pow(Integer(2), static_cast<unsigned long>(-mag)));
    return root_enclosure(powered, n, absolute_bits_for(approx, bits));
}

}  // namespace cubicsep
