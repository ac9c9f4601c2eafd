#include "cubicsep/int_polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace cubicsep {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs_low_first) : coeffs_(std::move(coeffs_low_first))
{
    trim();
}

IntPolynomial IntPolynomial::from_leading(std::vector<Integer> coeffs_high_first)
{
    std::reverse(coeffs_high_first.begin(), coeffs_high_first.end());
    return IntPolynomial(std::move(coeffs_high_first));
}

IntPolynomial IntPolynomial::from_leading(std::initializer_list<long> coeffs_high_first)
{
    std::vector<Integer> c;
    for (long v : coeffs_high_first)
        c.emplace_back(v);
    return from_leading(std::move(c));
}

IntPolynomial IntPolynomial::parse(std::string_view text)
{
    std::vector<Integer> high_first;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        high_first.push_back(parse_integer(item));
    }
    if (high_first.empty())
        throw DomainError("empty polynomial text");
    return from_leading(std::move(high_first));
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

Integer IntPolynomial::coeff(int i) const
{
    return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[i] : Integer(0);
}

Integer IntPolynomial::leading() const { return coeffs_.empty() ? Integer(0) : coeffs_.back(); }

Integer IntPolynomial::height() const
{
    Integer h = 0;
    for (const auto& c : coeffs_)
        if (abs(c) > h)
            h = abs(c);
    return h;
}

Integer IntPolynomial::content() const
{
    Integer g = 0;
    for (const auto& c : coeffs_)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    Integer g = content();
    if (g == 0 || g == 1)
        return *this;
    std::vector<Integer> c = coeffs_;
    for (auto& v : c)
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::normalized() const
{
    IntPolynomial p = primitive_part();
    return p.leading() < 0 ? -p : p;
}

IntPolynomial IntPolynomial::derivative() const
{
    std::vector<Integer> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d.push_back(coeffs_[i] * static_cast<unsigned long>(i));
    return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::taylor_shift(const Integer& k) const
{
    std::vector<Integer> c = coeffs_;
    if (k == 0)
        return *this;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            c[j] += k * c[j + 1];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::scale_argument(const Integer& s) const
{
    std::vector<Integer> c = coeffs_;
    Integer f = 1;
    for (auto& v : c) {
        v *= f;
        f *= s;
    }
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::reversed() const
{
    std::vector<Integer> c = coeffs_;
    std::reverse(c.begin(), c.end());
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::operator-() const
{
    std::vector<Integer> c = coeffs_;
    for (auto& v : c)
        v = -v;
    return IntPolynomial(std::move(c));
}

Rational IntPolynomial::eval(const Rational& x) const
{
    return make_rational(eval_scaled(x.get_num(), x.get_den()), pow(Integer(x.get_den()), degree()));
}

Integer IntPolynomial::eval_scaled(const Integer& p, const Integer& q) const
{
    if (coeffs_.empty())
        return 0;
    // Homogeneous Horner: sum a_i p^i q^(d-i).
    Integer acc = coeffs_.back();
    Integer qpow = 1;
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        qpow *= q;
        acc = acc * p + coeffs_[i] * qpow;
    }
    return acc;
}

int IntPolynomial::sign_at(const Rational& x) const { return sign(eval_scaled(x.get_num(), x.get_den())); }

std::string IntPolynomial::to_string() const
{
    if (coeffs_.empty())
        return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        out += coeffs_[i].get_str();
        if (i)
            out += ",";
    }
    return out;
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<Integer> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) { return a + (-b); }

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Integer> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const Integer& k)
{
    std::vector<Integer> c = a.coeffs_;
    for (auto& v : c)
        v *= k;
    return IntPolynomial(std::move(c));
}

Integer poly_discriminant(const IntPolynomial& p)
{
    if (p.degree() != 3)
        throw DomainError("poly_discriminant: degree must be 3");
    const Integer a = p.coeff(3), b = p.coeff(2), c = p.coeff(1), d = p.coeff(0);
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d;
}

Integer eval_scaled(const IntPolynomial& p, const Rational& x)
{
    return p.eval_scaled(x.get_num(), x.get_den());
}

namespace {

// Pseudo-remainder of a by b over Z[x].
IntPolynomial pseudo_remainder(IntPolynomial a, const IntPolynomial& b)
{
    const int db = b.degree();
    const Integer lb = b.leading();
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        const Integer la = a.leading();
        std::vector<Integer> s(static_cast<std::size_t>(shift) + 1);
        s.back() = la;
        a = a * lb - b * IntPolynomial(std::move(s));
    }
    return a;
}

// Exact quotient a / b over Q, returned as a primitive integer polynomial.
IntPolynomial exact_quotient_primitive(const IntPolynomial& a, const IntPolynomial& b)
{
    const int da = a.degree(), db = b.degree();
    std::vector<Rational> rem(a.coeffs().begin(), a.coeffs().end());
    std::vector<Rational> quot(static_cast<std::size_t>(da - db) + 1);
    const Rational lb(b.leading());
    for (int k = da - db; k >= 0; --k) {
        Rational f = rem[k + db] / lb;
        quot[k] = f;
        for (int j = 0; j <= db; ++j)
            rem[k + j] -= f * Rational(b.coeff(j));
    }
    Integer l = 1;
    for (const auto& q : quot)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> out;
    for (const auto& q : quot) {
        Rational v = q * l;
        out.push_back(v.get_num());
    }
    return IntPolynomial(std::move(out)).normalized();
}

IntPolynomial squarefree_part(const IntPolynomial& p)
{
    IntPolynomial g = poly_gcd(p, p.derivative());
    if (g.degree() == 0)
        return p.normalized();
    return exact_quotient_primitive(p, g);
}

int sign_variations(const IntPolynomial& p)
{
    int count = 0, last = 0;
    for (const auto& c : p.coeffs()) {
        int s = sign(c);
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

// Roots of q inside (0,1), reported as (c, k) meaning (c/2^k, (c+1)/2^k) or exact
// points (numerator, k) meaning num/2^k.
struct UnitRoots {
    std::vector<std::pair<Integer, unsigned>> open;
    std::vector<std::pair<Integer, unsigned>> exact;
};

UnitRoots isolate_unit(const IntPolynomial& q0)
{
    UnitRoots out;
    struct Job {
        IntPolynomial q;
        Integer c;
        unsigned k;
    };
    std::vector<Job> stack{{q0, 0, 0}};
    const Integer two = 2;
    while (!stack.empty()) {
        Job job = std::move(stack.back());
        stack.pop_back();
        const int v = sign_variations(job.q.reversed().taylor_shift(1));
        if (v == 0)
            continue;
        if (v == 1) {
            out.open.emplace_back(job.c, job.k);
            continue;
        }
        const int d = job.q.degree();
        if (job.q.eval_scaled(1, 2) == 0)
            out.exact.emplace_back(2 * job.c + 1, job.k + 1);
        // 2^d q(x/2) and its shift by one cover (0,1/2) and (1/2,1).
        std::vector<Integer> half = job.q.coeffs();
        for (int i = 0; i <= d; ++i)
            mpz_mul_2exp(half[i].get_mpz_t(), half[i].get_mpz_t(), static_cast<mp_bitcnt_t>(d - i));
        IntPolynomial left(std::move(half));
        IntPolynomial right = left.taylor_shift(1);
        stack.push_back({std::move(right), 2 * job.c + 1, job.k + 1});
        stack.push_back({std::move(left), 2 * job.c, job.k + 1});
    }
    return out;
}

Rational dyadic(const Integer& num, unsigned k, const Integer& scale)
{
    return make_rational(num * scale, pow(Integer(2), k));
}

}  // namespace

IntPolynomial poly_gcd(const IntPolynomial& a0, const IntPolynomial& b0)
{
    IntPolynomial a = a0.primitive_part(), b = b0.primitive_part();
    if (a.is_zero())
        return b.normalized();
    if (b.is_zero())
        return a.normalized();
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        IntPolynomial r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.primitive_part();
    }
    return a.normalized();
}

bool is_squarefree(const IntPolynomial& p) { return poly_gcd(p, p.derivative()).degree() == 0; }

int RealRootInterval::sign_right_of_lo() const
{
    IntPolynomial d = poly;
    while (!d.is_zero()) {
        if (int s = d.sign_at(lo); s != 0)
            return s;
        d = d.derivative();
    }
    return 0;
}

int RealRootInterval::compare(const Rational& x) const
{
    if (lo == hi)
        return lo < x ? -1 : (lo > x ? 1 : 0);
    if (x <= lo)
        return 1;
    if (x >= hi)
        return -1;
    const int s = poly.sign_at(x);
    if (s == 0)
        return 0;
    return s == sign_right_of_lo() ? 1 : -1;
}

std::vector<RealRootInterval> isolate_real_roots(const IntPolynomial& p)
{
    if (p.is_zero())
        throw DomainError("isolate_real_roots: zero polynomial");
    if (!is_squarefree(p))
        throw DomainError("isolate_real_roots: polynomial is not squarefree");
    std::vector<RealRootInterval> roots;
    IntPolynomial work = p;
    if (work.coeff(0) == 0) {
        roots.push_back({0, 0, p});
        std::vector<Integer> c(work.coeffs().begin() + 1, work.coeffs().end());
        work = IntPolynomial(std::move(c));
    }
    if (work.degree() >= 1) {
        // Strict Cauchy bound |root| < 1 + H/|lead| <= 2^e.
        Integer bound = 1 + ceil(make_rational(work.height(), abs(work.leading())));
        const unsigned e = static_cast<unsigned>(bit_length(bound));
        const Integer m = pow(Integer(2), e);
        for (int side : {1, -1}) {
            const Integer scale = side * m;
            UnitRoots unit = isolate_unit(work.scale_argument(scale));
            for (const auto& [c, k] : unit.open) {
                Rational a = dyadic(c, k, scale), b = dyadic(c + 1, k, scale);
                if (a > b)
                    std::swap(a, b);
                roots.push_back({a, b, p});
            }
            for (const auto& [num, k] : unit.exact) {
                Rational x = dyadic(num, k, scale);
                roots.push_back({x, x, p});
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; });
    for (auto& r : roots)
        refine(r, 1);
    return roots;
}

void refine(RealRootInterval& root, const Rational& max_width)
{
    if (root.lo == root.hi)
        return;
    int s_lo = root.sign_right_of_lo();
    while (root.hi - root.lo > max_width) {
        Rational mid = (root.lo + root.hi) / 2;
        int s = root.poly.sign_at(mid);
        if (s == 0) {
            root.lo = root.hi = mid;
            return;
        }
        if (s == s_lo)
            root.lo = mid;
        else
            root.hi = mid;
    }
}

void refine_bits(RealRootInterval& root, unsigned bits)
{
    refine(root, make_rational(1, pow(Integer(2), bits)));
}

std::vector<RealRootInterval> roots_in(const IntPolynomial& p, const Rational& lo, const Rational& hi)
{
    if (lo > hi)
        throw DomainError("roots_in: empty interval");
    IntPolynomial sqf = squarefree_part(p);
    std::vector<RealRootInterval> out;
    for (auto& r : isolate_real_roots(sqf)) {
        const int c_lo = r.compare(lo);
        const int c_hi = r.compare(hi);
        if (c_lo < 0 || c_hi > 0)
            continue;
        if (c_lo == 0) {
            out.push_back({lo, lo, sqf});
        } else if (c_hi == 0) {
            out.push_back({hi, hi, sqf});
        } else {
            out.push_back({std::max(lo, r.lo), std::min(hi, r.hi), sqf});
        }
    }
    return out;
}

namespace {

std::vector<Integer> small_divisors(Integer n)
{
    n = abs(n);
    std::vector<Integer> out;
    for (long d = 1; static_cast<unsigned long>(d) * static_cast<unsigned long>(d) <= n.get_ui(); ++d) {
        if (n.get_ui() % static_cast<unsigned long>(d) == 0) {
            out.emplace_back(d);
            if (static_cast<unsigned long>(d) * static_cast<unsigned long>(d) != n.get_ui())
                out.emplace_back(n.get_ui() / static_cast<unsigned long>(d));
        }
    }
    return out;
}

constexpr unsigned long kSmallDivisorLimit = 1UL << 24;

}  // namespace

std::vector<Rational> rational_roots(const IntPolynomial& p)
{
    if (p.is_zero())
        throw DomainError("rational_roots: zero polynomial");
    std::vector<Rational> out;
    IntPolynomial work = p.primitive_part();
    if (work.coeff(0) == 0) {
        out.emplace_back(0);
        int shift = 0;
        while (work.coeff(shift) == 0)
            ++shift;
        work = IntPolynomial(std::vector<Integer>(work.coeffs().begin() + shift, work.coeffs().end()));
    }
    if (work.degree() == 0)
        return out;
    const Integer a0 = abs(work.coeff(0)), lead = abs(work.leading());
    if (a0.fits_ulong_p() && lead.fits_ulong_p() && a0.get_ui() <= kSmallDivisorLimit &&
        lead.get_ui() <= kSmallDivisorLimit) {
        for (const auto& num : small_divisors(a0))
            for (const auto& den : small_divisors(lead))
                for (int s : {1, -1}) {
                    Rational x = make_rational(s * num, den);
                    if (x.get_den() == den && x.get_num() == s * num && work.eval_scaled(x.get_num(), x.get_den()) == 0)
                        out.push_back(x);
                }
    } else {
        // A root r = u/v in lowest terms has v | lead, so lead * r is an integer.
        IntPolynomial sqf = squarefree_part(work);
        const Integer l = abs(sqf.leading());
        for (auto& r : isolate_real_roots(sqf)) {
            if (r.is_exact()) {
                out.push_back(r.lo);
                continue;
            }
            refine(r, make_rational(1, 2 * l));
            if (r.is_exact()) {
                out.push_back(r.lo);
                continue;
            }
            Integer s = ceil(r.lo * l);
            if (Rational(s) <= r.hi * l) {
                Rational x = make_rational(s, l);
                if (sqf.eval_scaled(x.get_num(), x.get_den()) == 0)
                    out.push_back(x);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool is_irreducible_cubic(const IntPolynomial& p)
{
    if (p.degree() != 3)
        throw DomainError("is_irreducible_cubic: degree must be 3");
    return rational_roots(p.primitive_part()).empty();
}

}  // namespace cubicsep
