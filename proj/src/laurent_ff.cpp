#include "cubicsep/laurent_ff.hpp"
#include "cubicsep/int_polynomial.hpp"

#include <algorithm>
#include <climits>
#include <limits>

namespace cubicsep::ff {

namespace {

Integer lcm_int(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer gcd_int(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Rational two_pow(long e)
{
    Integer p = pow(Integer(2), static_cast<unsigned long>(std::labs(e)));
    return e >= 0 ? Rational(p) : make_rational(1, p);
}

// Degree bound of a series: its top term, or its error degree when no term is known.
long magnitude(const LaurentSeries& x)
{
    return x.is_zero() ? x.error_degree() : x.top_degree;
}

LaurentSeries normalized(LaurentSeries x)
{
    std::size_t lead = 0;
    while (lead < x.coeffs.size() && x.coeffs[lead] == 0)
        ++lead;
    if (lead == x.coeffs.size())
        return LaurentSeries::zero(x.error_degree());
    x.coeffs.erase(x.coeffs.begin(), x.coeffs.begin() + static_cast<long>(lead));
    x.top_degree -= static_cast<long>(lead);
    return x;
}

LaurentSeries add_poly(const LaurentSeries& x, const TPoly& p)
{
    return x + LaurentSeries::from_poly(p, x.error_degree());
}

// Largest deg(m_i) + i e over nonzero m_i and the indices attaining it.
std::pair<long, std::vector<int>> edge(const std::vector<TPoly>& m, long e)
{
    long best = LONG_MIN;
    std::vector<int> at;
    for (int i = 0; i < static_cast<int>(m.size()); ++i) {
        if (m[i].is_zero())
            continue;
        long v = m[i].degree() + i * e;
        if (v > best) {
            best = v;
            at = {i};
        } else if (v == best) {
            at.push_back(i);
        }
    }
    return {best, at};
}

// sum over the edge of lc(m_i) c^i, and its derivative, at c.
std::pair<Rational, Rational> edge_value(const std::vector<TPoly>& m, const std::vector<int>& at, const Rational& c)
{
    Rational v = 0, dv = 0;
    for (int i : at) {
        v += m[i].leading() * pow(c, i);
        if (i > 0)
            dv += i * m[i].leading() * pow(c, i - 1);
    }
    return {v, dv};
}

std::vector<Rational> edge_roots(const std::vector<TPoly>& m, const std::vector<int>& at)
{
    Integer den = 1;
    for (int i : at)
        den = lcm_int(den, m[i].leading().get_den());
    std::vector<Integer> coeffs(static_cast<std::size_t>(at.back()) + 1, Integer(0));
    for (int i : at) {
        Rational v = m[i].leading() * den;
        coeffs[static_cast<std::size_t>(i)] = v.get_num();
    }
    std::vector<Rational> out;
    for (const auto& r : rational_roots(IntPolynomial(coeffs)))
        if (r != 0)
            out.push_back(r);
    return out;
}

std::vector<TPoly> as_vector(const TPolyCubic& p)
{
    return {p.a.begin(), p.a.end()};
}

long max_degree(const std::vector<TPoly>& m)
{
    long d = 0;
    for (const auto& c : m)
        d = std::max(d, c.degree());
    return d;
}

// Does the monic cubic y^3 + m2 y^2 + m1 y + m0 have a root in Q[t] of degree <= max_deg?
bool has_poly_root(const std::vector<TPoly>& m, long max_deg)
{
    if (m[0].is_zero())
        return true;
    for (long e = 0; e <= max_deg; ++e) {
        auto [top, at] = edge(m, e);
        if (at.size() < 2)
            continue;
        for (const auto& c : edge_roots(m, at)) {
            const TPoly s = TPoly::monomial(c, e);
            std::vector<TPoly> n{m[0] + m[1] * s + m[2] * s * s + s * s * s, m[1] + TPoly(2) * m[2] * s + TPoly(3) * s * s,
                                 m[2] + TPoly(3) * s, TPoly(1)};
            if (has_poly_root(n, e - 1))
                return true;
        }
    }
    return false;
}

// Elements of Q(t)[x]/(P) as coefficients of 1, x, x^2.
using Residue = std::array<RatFunc, 3>;

Residue mulmod(const Residue& u, const Residue& v, const TPolyCubic& p)
{
    std::array<RatFunc, 5> r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i + j] = r[i + j] + u[i] * v[j];
    for (int d = 4; d >= 3; --d) {
        if (r[d].is_zero())
            continue;
        const RatFunc f = r[d] / RatFunc(p.a[3]);
        for (int i = 0; i < 3; ++i)
            r[d - 3 + i] = r[d - 3 + i] - f * RatFunc(p.a[i]);
        r[d] = RatFunc();
    }
    return {r[0], r[1], r[2]};
}

TPoly lcm(const TPoly& a, const TPoly& b)
{
    return divmod(a * b, gcd(a, b)).first.monic();
}

// Rational multiplier making every coefficient integral with content 1.
Rational content_scale(const std::vector<const TPoly*>& polys)
{
    Integer den = 1, num = 0;
    for (const TPoly* p : polys)
        for (const auto& c : p->coeffs())
            den = lcm_int(den, c.get_den());
    for (const TPoly* p : polys)
        for (const auto& c : p->coeffs())
            num = gcd_int(num, Rational(c * den).get_num());
    return num == 0 ? Rational(1) : make_rational(den, num);
}

}  // namespace

// TPoly

TPoly::TPoly(std::vector<Rational> low_first) : c_(std::move(low_first))
{
    trim();
}

TPoly TPoly::monomial(const Rational& c, long k)
{
    std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
    v.back() = c;
    return TPoly(std::move(v));
}

void TPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Rational TPoly::coeff(long i) const
{
    return i >= 0 && i < static_cast<long>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0);
}

Rational TPoly::leading() const
{
    return c_.empty() ? Rational(0) : c_.back();
}

Rational TPoly::norm() const
{
    return is_zero() ? Rational(0) : two_pow(degree());
}

TPoly TPoly::derivative() const
{
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i)
        d.push_back(c_[i] * static_cast<long>(i));
    return TPoly(std::move(d));
}

TPoly TPoly::monic() const
{
    if (is_zero())
        return *this;
    std::vector<Rational> d = c_;
    const Rational l = leading();
    for (auto& c : d)
        c /= l;
    return TPoly(std::move(d));
}

TPoly TPoly::compose(const TPoly& s) const
{
    TPoly r;
    for (long i = degree(); i >= 0; --i)
        r = r * s + TPoly(c_[static_cast<std::size_t>(i)]);
    return r;
}

Rational TPoly::eval(const Rational& x) const
{
    Rational r = 0;
    for (long i = degree(); i >= 0; --i)
        r = r * x + c_[static_cast<std::size_t>(i)];
    return r;
}

std::string TPoly::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
        const Rational& c = c_[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        std::string mag = cubicsep::to_string(abs(c));
        if (!out.empty())
            out += sign(c) < 0 ? " - " : " + ";
        else if (sign(c) < 0)
            out += "-";
        if (i == 0) {
            out += mag;
            continue;
        }
        if (mag != "1")
            out += mag + "*";
        out += i > 1 ? "t^" + std::to_string(i) : "t";
    }
    return out;
}

TPoly operator+(const TPoly& a, const TPoly& b)
{
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        r[i] += b.c_[i];
    return TPoly(std::move(r));
}

TPoly TPoly::operator-() const
{
    std::vector<Rational> r = c_;
    for (auto& c : r)
        c = -c;
    return TPoly(std::move(r));
}

TPoly operator-(const TPoly& a, const TPoly& b)
{
    return a + (-b);
}

TPoly operator*(const TPoly& a, const TPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != 0)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
    return TPoly(std::move(r));
}

std::pair<TPoly, TPoly> divmod(const TPoly& a, const TPoly& b)
{
    if (b.is_zero())
        throw DomainError("division by the zero polynomial");
    std::vector<Rational> rem = a.coeffs();
    const long db = b.degree();
    const long dq = a.degree() - db;
    if (dq < 0)
        return {TPoly(), a};
    std::vector<Rational> quo(static_cast<std::size_t>(dq) + 1, Rational(0));
    const Rational lb = b.leading();
    for (long k = dq; k >= 0; --k) {
        const Rational f = rem[static_cast<std::size_t>(k + db)] / lb;
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0)
            continue;
        for (long i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(k + i)] -= f * b.coeffs()[static_cast<std::size_t>(i)];
    }
    return {TPoly(std::move(quo)), TPoly(std::move(rem))};
}

TPoly gcd(const TPoly& a0, const TPoly& b0)
{
    TPoly a = a0, b = b0;
    while (!b.is_zero()) {
        TPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// RatFunc

RatFunc::RatFunc(TPoly n, TPoly d)
{
    if (d.is_zero())
        throw DomainError("rational function with zero denominator");
    if (n.is_zero()) {
        num = TPoly();
        den = TPoly(1);
        return;
    }
    const TPoly g = gcd(n, d);
    n = divmod(n, g).first;
    d = divmod(d, g).first;
    const Rational l = d.leading();
    num = n * TPoly(1 / l);
    den = d * TPoly(1 / l);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b)
{
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

RatFunc operator-(const RatFunc& a, const RatFunc& b)
{
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}

RatFunc operator*(const RatFunc& a, const RatFunc& b)
{
    return {a.num * b.num, a.den * b.den};
}

RatFunc operator/(const RatFunc& a, const RatFunc& b)
{
    if (b.is_zero())
        throw DomainError("division by zero in Q(t)");
    return {a.num * b.den, a.den * b.num};
}

// LaurentSeries

LaurentSeries LaurentSeries::from_poly(const TPoly& p, long error_degree)
{
    if (p.is_zero() || p.degree() <= error_degree)
        return zero(error_degree);
    LaurentSeries x{p.degree(), {}};
    for (long d = p.degree(); d > error_degree; --d)
        x.coeffs.push_back(p.coeff(d));
    return x;
}

Rational LaurentSeries::coeff(long degree) const
{
    if (degree <= error_degree())
        throw PrecisionError("series coefficient of t^" + std::to_string(degree) + " is not known");
    if (is_zero() || degree > top_degree)
        return 0;
    return coeffs[static_cast<std::size_t>(top_degree - degree)];
}

TPoly LaurentSeries::polynomial_part() const
{
    if (error_degree() >= 0)
        throw PrecisionError("polynomial part not determined by the known terms");
    std::vector<Rational> c;
    for (long d = 0; d <= top_degree; ++d)
        c.push_back(coeff(d));
    return TPoly(std::move(c));
}

LaurentSeries LaurentSeries::fractional_part() const
{
    if (is_zero() || top_degree < 0)
        return *this;
    LaurentSeries x{-1, {}};
    for (long d = -1; d > error_degree(); --d)
        x.coeffs.push_back(coeff(d));
    if (x.coeffs.empty())
        return zero(std::min(-1L, error_degree()));
    return normalized(x);
}

LaurentSeries LaurentSeries::truncated(long e) const
{
    if (e <= error_degree())
        return *this;
    if (is_zero() || top_degree <= e)
        return zero(e);
    LaurentSeries x = *this;
    x.coeffs.resize(static_cast<std::size_t>(top_degree - e));
    return normalized(x);
}

std::string LaurentSeries::to_string() const
{
    if (is_zero())
        return "O(t^" + std::to_string(error_degree()) + ")";
    std::string out = std::to_string(top_degree) + ":";
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out += (i ? ", " : " ") + cubicsep::to_string(coeffs[i]);
    return out;
}

Rational laurent_norm(const LaurentSeries& x)
{
    return x.is_zero() ? Rational(0) : two_pow(x.top_degree);
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b)
{
    const long e = std::max(a.error_degree(), b.error_degree());
    long top = e;
    if (!a.is_zero())
        top = std::max(top, a.top_degree);
    if (!b.is_zero())
        top = std::max(top, b.top_degree);
    if (top <= e)
        return LaurentSeries::zero(e);
    LaurentSeries x{top, {}};
    for (long d = top; d > e; --d)
        x.coeffs.push_back(a.coeff(d) + b.coeff(d));
    return normalized(x);
}

LaurentSeries operator-(const LaurentSeries& a)
{
    LaurentSeries x = a;
    for (auto& c : x.coeffs)
        c = -c;
    return x;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b)
{
    return a + (-b);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b)
{
    const long e = std::max(a.error_degree() + magnitude(b), b.error_degree() + magnitude(a));
    if (a.is_zero() || b.is_zero())
        return LaurentSeries::zero(e);
    const long top = a.top_degree + b.top_degree;
    if (top <= e)
        return LaurentSeries::zero(e);
    LaurentSeries x{top, std::vector<Rational>(static_cast<std::size_t>(top - e), Rational(0))};
    const long n = x.precision();
    for (long i = 0; i < a.precision() && i < n; ++i) {
        const Rational& ai = a.coeffs[static_cast<std::size_t>(i)];
        if (ai == 0)
            continue;
        for (long j = 0; j < b.precision() && i + j < n; ++j)
            x.coeffs[static_cast<std::size_t>(i + j)] += ai * b.coeffs[static_cast<std::size_t>(j)];
    }
    return normalized(x);
}

LaurentSeries operator*(const TPoly& a, const LaurentSeries& b)
{
    if (a.is_zero())
        return LaurentSeries::zero(std::numeric_limits<long>::min() / 4);
    LaurentSeries lifted = LaurentSeries::from_poly(a, a.degree() - std::max(1L, b.precision()) - 1);
    return lifted * b;
}

LaurentSeries inverse(const LaurentSeries& a)
{
    if (a.is_zero())
        throw PrecisionError("cannot invert a series with no known terms");
    const long n = a.precision();
    std::vector<Rational> b(static_cast<std::size_t>(n));
    const Rational& c0 = a.coeffs[0];
    b[0] = 1 / c0;
    for (long k = 1; k < n; ++k) {
        Rational s = 0;
        for (long i = 1; i <= k; ++i)
            s += a.coeffs[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
        b[static_cast<std::size_t>(k)] = -s / c0;
    }
    return {-a.top_degree, std::move(b)};
}

// TPolyCubic

Rational TPolyCubic::height() const
{
    Rational h = 0;
    for (const auto& c : a)
        h = std::max(h, c.norm());
    return h;
}

bool TPolyCubic::coprime() const
{
    TPoly g;
    for (const auto& c : a)
        g = gcd(g, c);
    return g.degree() == 0;
}

bool TPolyCubic::irreducible() const
{
    if (a[3].is_zero())
        throw DomainError("cubic over Q[t] needs a nonzero x^3 coefficient");
    if (a[0].is_zero())
        return false;
    // y = a3 x turns P into a3^2 times a monic cubic; a root in Q(t) is then in Q[t].
    const std::vector<TPoly> m{a[0] * a[3] * a[3], a[1] * a[3], a[2], TPoly(1)};
    return !has_poly_root(m, max_degree(m));
}

TPolyCubic TPolyCubic::substitute(const TPoly& s) const
{
    TPolyCubic r;
    for (int i = 0; i < 4; ++i)
        r.a[i] = a[i].compose(s);
    return r;
}

TPolyCubic TPolyCubic::primitive() const
{
    const Rational k = content_scale({&a[0], &a[1], &a[2], &a[3]});
    TPolyCubic r;
    const Rational s = sign(a[3].leading()) < 0 ? -k : k;
    for (int i = 0; i < 4; ++i)
        r.a[i] = a[i] * TPoly(s);
    return r;
}

std::string TPolyCubic::to_string() const
{
    std::string out;
    for (int i = 3; i >= 0; --i) {
        if (a[i].is_zero())
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + a[i].to_string() + ")";
        if (i > 0)
            out += i > 1 ? "*x^" + std::to_string(i) : "*x";
    }
    return out.empty() ? "0" : out;
}

LaurentSeries eval(const TPolyCubic& p, const LaurentSeries& x)
{
    int top = 3;
    while (top > 0 && p.a[top].is_zero())
        --top;
    if (top == 0)
        return LaurentSeries::from_poly(p.a[0], x.error_degree());
    LaurentSeries r = p.a[top] * x;
    for (int i = top - 1; i >= 0; --i) {
        r = add_poly(r, p.a[i]);
        if (i > 0)
            r = r * x;
    }
    return r;
}

// Branches and series roots

std::vector<Branch> branches(const TPolyCubic& p)
{
    const auto m = as_vector(p);
    long lo = LONG_MAX, hi = LONG_MIN;
    for (const auto& c : m)
        if (!c.is_zero()) {
            lo = std::min(lo, c.degree());
            hi = std::max(hi, c.degree());
        }
    std::vector<Branch> out;
    const long span = hi - lo;
    for (long e = span; e >= -span; --e) {
        auto [top, at] = edge(m, e);
        if (at.size() < 2)
            continue;
        for (const auto& c : edge_roots(m, at))
            if (sign(edge_value(m, at, c).second) != 0)
                out.push_back({e, c});
    }
    return out;
}

LaurentSeries newton_root(const TPolyCubic& p, const Branch& branch, long terms)
{
    if (terms < 1)
        throw DomainError("newton_root needs at least one term");
    const auto m = as_vector(p);
    auto [top, at] = edge(m, branch.degree);
    if (at.size() < 2 || branch.lead == 0)
        throw UnsupportedBranch("no series root with leading degree " + std::to_string(branch.degree));
    auto [v, dv] = edge_value(m, at, branch.lead);
    if (v != 0)
        throw UnsupportedBranch("leading coefficient " + to_string(branch.lead) + " is not on the Newton polygon");
    if (dv == 0)
        throw UnsupportedBranch("leading coefficient is a repeated root of the edge polynomial");
    // Newton steps double the number of correct terms: with x_n correct to n
    // terms, x_n - P(x_n)/P'(x_n) is correct to 2n.
    const TPolyCubic dp{{p.a[1], TPoly(2) * p.a[2], TPoly(3) * p.a[3], TPoly()}};
    LaurentSeries x{branch.degree, {branch.lead}};
    for (long n = 1; n < terms;) {
        const long m = std::min(2 * n, terms);
        x.coeffs.resize(static_cast<std::size_t>(m), Rational(0));
        const LaurentSeries f = eval(p, x);
        LaurentSeries next = f.is_zero() ? x : x - f * inverse(eval(dp, x));
        next = next.truncated(branch.degree - m);
        next.coeffs.resize(static_cast<std::size_t>(m), Rational(0));
        x = std::move(next);
        n = m;
    }
    return x;
}

// Continued fractions

PolyCF poly_cf_expand(const LaurentSeries& x, std::size_t n)
{
    PolyCF out;
    TPoly p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    LaurentSeries cur = x;
    for (std::size_t k = 0;; ++k) {
        TPoly a = cur.polynomial_part();
        if (k > 0 && a.degree() < 1)
            throw PrecisionError("partial quotient of degree < 1");
        TPoly p = a * p1 + p2, q = a * q1 + q2;
        out.quotients.push_back(a);
        out.p.push_back(p);
        out.q.push_back(q);
        p2 = std::exchange(p1, p);
        q2 = std::exchange(q1, q);
        if (k == n)
            return out;
        LaurentSeries frac = cur.fractional_part();
        if (frac.is_zero())
            throw PrecisionError("series exhausted after " + std::to_string(k + 1) + " partial quotients");
        cur = inverse(frac);
    }
}

PolyCF poly_cf_expand(const TPolyCubic& p, const Branch& branch, std::size_t n)
{
    for (long terms = 32;; terms *= 2) {
        try {
            return poly_cf_expand(newton_root(p, branch, terms), n);
        } catch (const PrecisionError&) {
            if (terms >= 8192)
                throw;
        }
    }
}

Rational approx_norm(const LaurentSeries& x, const TPoly& p, const TPoly& q)
{
    if (q.is_zero())
        throw DomainError("approximation with zero denominator");
    LaurentSeries d = q * x - LaurentSeries::from_poly(p, x.error_degree() + q.degree());
    if (d.is_zero())
        throw PrecisionError("x - p/q is below the known precision");
    return laurent_norm(d) / q.norm();
}

// K-type template

TPoly KCFTemplate::numerator(std::size_t j) const
{
    if (j == 0)
        throw DomainError("template entries start at 1");
    const long k = static_cast<long>((j - 1) / 4);
    switch ((j - 1) % 4) {
    case 0:
        return TPoly(2 * (3 * k + 1) * c);
    case 1:
        return TPoly((6 * k + 1) * c);
    case 2:
        return TPoly(2 * (3 * k + 2) * c * c);
    default:
        return TPoly((6 * k + 5) * c * c);
    }
}

TPoly KCFTemplate::denominator(std::size_t j) const
{
    if (j == 0)
        return T;
    const long k = static_cast<long>((j - 1) / 4);
    switch ((j - 1) % 4) {
    case 0:
        return TPoly(3 * (4 * k + 1)) * T;
    case 2:
        return TPoly(3 * (4 * k + 3)) * T * (T * T + TPoly(2 * c));
    default:
        return T;
    }
}

TPolyCubic KCFTemplate::cubic() const
{
    return TPolyCubic::from_leading(TPoly(3), TPoly(-3) * T, TPoly(-3 * c), TPoly(c) * T);
}

Branch KCFTemplate::branch() const
{
    return {T.degree(), T.leading()};
}

std::vector<Convergent> kcf_convergents(const KCFTemplate& tmpl, std::size_t count)
{
    if (count < 1)
        throw DomainError("kcf_convergents needs count >= 1");
    if (tmpl.c == 0 || tmpl.T.degree() < 1)
        throw DomainError("template needs c != 0 and a nonconstant T");
    std::vector<Convergent> out;
    TPoly p2 = 1, q2 = 0, p1 = tmpl.T, q1 = 1;
    out.push_back({p1, q1});
    for (std::size_t j = 1; j < count; ++j) {
        const TPoly a = tmpl.numerator(j), b = tmpl.denominator(j);
        TPoly p = b * p1 + a * p2, q = b * q1 + a * q2;
        p2 = std::exchange(p1, p);
        q2 = std::exchange(q1, q);
        const TPoly g = gcd(p, q);
        out.push_back({divmod(p, g).first, divmod(q, g).first});
    }
    return out;
}

// Riccati equation

Rational RiccatiCoeffs::max_norm() const
{
    return std::max({A.norm(), B.norm(), C.norm(), D.norm()});
}

RiccatiCoeffs derive_riccati(const TPolyCubic& p)
{
    if (p.a[3].is_zero())
        throw DomainError("derive_riccati needs a cubic");
    if (!p.irreducible())
        throw DomainError("derive_riccati needs an irreducible cubic");
    const Residue px{RatFunc(p.a[1]), RatFunc(TPoly(2) * p.a[2]), RatFunc(TPoly(3) * p.a[3])};
    const Residue x{RatFunc(), RatFunc(TPoly(1)), RatFunc()};
    // -P_t reduced: x^3 = x * x^2.
    Residue rhs;
    {
        const Residue x3 = mulmod(x, {RatFunc(), RatFunc(), RatFunc(TPoly(1))}, p);
        for (int i = 0; i < 3; ++i)
            rhs[i] = RatFunc(-p.a[i].derivative()) - RatFunc(p.a[3].derivative()) * x3[i];
    }
    // Columns x^j P_x; solve M w = rhs.
    std::array<std::array<RatFunc, 4>, 3> mat;
    Residue col = px;
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i)
            mat[i][j] = col[i];
        col = mulmod(col, x, p);
    }
    for (int i = 0; i < 3; ++i)
        mat[i][3] = rhs[i];
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        while (piv < 3 && mat[piv][c].is_zero())
            ++piv;
        if (piv == 3)
            throw DomainError("P_x is not invertible modulo P");
        std::swap(mat[c], mat[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c || mat[r][c].is_zero())
                continue;
            const RatFunc f = mat[r][c] / mat[c][c];
            for (int k = c; k < 4; ++k)
                mat[r][k] = mat[r][k] - f * mat[c][k];
        }
    }
    std::array<RatFunc, 3> w;
    for (int i = 0; i < 3; ++i)
        w[i] = mat[i][3] / mat[i][i];

    TPoly D = 1;
    for (const auto& wi : w)
        D = lcm(D, wi.den);
    std::array<TPoly, 3> abc;
    for (int i = 0; i < 3; ++i)
        abc[i] = w[i].num * divmod(D, w[i].den).first;
    TPoly g = D;
    for (const auto& c : abc)
        g = gcd(g, c);
    RiccatiCoeffs r{divmod(abc[0], g).first, divmod(abc[1], g).first, divmod(abc[2], g).first, divmod(D, g).first};
    Rational k = content_scale({&r.A, &r.B, &r.C, &r.D});
    if (sign(r.D.leading()) < 0)
        k = -k;
    for (TPoly* c : {&r.A, &r.B, &r.C, &r.D})
        *c = *c * TPoly(k);
    return r;
}

bool riccati_identity(const TPolyCubic& p, const RiccatiCoeffs& r)
{
    // G = D (-P_t) - (A + B x + C x^2) P_x, degree <= 4 in x.
    std::vector<TPoly> g(5);
    for (int i = 0; i < 4; ++i)
        g[i] = g[i] - r.D * p.a[i].derivative();
    const std::array<TPoly, 3> w{r.A, r.B, r.C};
    for (int i = 0; i < 3; ++i)
        for (int j = 1; j < 4; ++j)
            g[i + j - 1] = g[i + j - 1] - w[i] * TPoly(j) * p.a[j];
    for (int d = 4; d >= 3; --d) {
        const TPoly lead = g[d];
        if (lead.is_zero())
            continue;
        for (auto& c : g)
            c = c * p.a[3];
        for (int i = 0; i < 4; ++i)
            g[d - 3 + i] = g[d - 3 + i] - lead * p.a[i];
    }
    return std::all_of(g.begin(), g.end(), [](const TPoly& c) { return c.is_zero(); });
}

std::pair<TPolyCubic, Branch> normalize_unit_norm(const TPolyCubic& p0, const Branch& b0)
{
    TPolyCubic p = p0;
    Branch b = b0;
    if (b.degree > 0) {
        p = TPolyCubic{{p.a[3], p.a[2], p.a[1], p.a[0]}};
        b = {-b.degree, 1 / b.lead};
    }
    if (b.degree < 0) {
        // P(x - 1) holds x + 1.
        const TPoly& a0 = p.a[0];
        const TPoly& a1 = p.a[1];
        const TPoly& a2 = p.a[2];
        const TPoly& a3 = p.a[3];
        p = TPolyCubic{{a0 - a1 + a2 - a3, a1 - TPoly(2) * a2 + TPoly(3) * a3, a2 - TPoly(3) * a3, a3}};
        b = {0, 1};
    }
    return {p, b};
}

std::vector<ApproxRow> ff_approx_check(const TPolyCubic& p, const KCFTemplate& tmpl,
                                       const std::vector<std::size_t>& indices, long terms)
{
    if (indices.empty())
        return {};
    const auto convs = kcf_convergents(tmpl, *std::max_element(indices.begin(), indices.end()) + 1);
    const Rational H = p.height();
    for (;; terms *= 2) {
        try {
            const LaurentSeries x = newton_root(p, tmpl.branch(), terms);
            std::vector<ApproxRow> rows;
            for (std::size_t k : indices) {
                ApproxRow r{k, approx_norm(x, convs[k].p, convs[k].q), convs[k].q.norm(), H, false, false, k % 4 == 2};
                const Rational q2 = r.q_norm * r.q_norm;
                r.convergent = r.distance * q2 < 1;
                r.pass = r.distance * q2 * H * H * H <= 1;
                rows.push_back(r);
            }
            return rows;
        } catch (const PrecisionError&) {
            if (terms >= 8192)
                throw;
        }
    }
}

LaurentSeries to_unit_norm(const LaurentSeries& x0)
{
    LaurentSeries x = x0;
    if (!x.is_zero() && x.top_degree > 0)
        x = inverse(x);
    if (!x.is_zero() && x.top_degree < 0)
        x = x + LaurentSeries::from_poly(TPoly(1), x.error_degree());
    return x;
}

std::vector<ChainRow> chain_42(const TPolyCubic& p, const Branch& branch, std::size_t count)
{
    if (count < 1)
        throw DomainError("chain_42 needs count >= 1");
    const TPolyCubic np = normalize_unit_norm(p, branch).first;
    const RiccatiCoeffs r = derive_riccati(np);
    const Rational bound = std::max({r.B.norm(), r.C.norm(), Rational(r.D.norm() / 2)});
    const Rational H = np.height();
    const Rational H4 = H * H * H * H;
    for (long terms = 64;; terms *= 2) {
        try {
            const LaurentSeries x = to_unit_norm(newton_root(p, branch, terms));
            const PolyCF cf = poly_cf_expand(x, count - 1);
            std::vector<ChainRow> rows;
            for (std::size_t k = 0; k < count; ++k) {
                ChainRow row{k, approx_norm(x, cf.p[k], cf.q[k]), cf.q[k].norm(), bound, H, false, false};
                row.first = row.distance * bound * row.q_norm * row.q_norm >= 1;
                row.second = bound <= H4;
                rows.push_back(row);
            }
            return rows;
        } catch (const PrecisionError&) {
            if (terms >= 8192)
                throw;
        }
    }
}

}  // namespace cubicsep::ff
