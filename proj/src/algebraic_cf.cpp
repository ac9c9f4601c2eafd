#include "cubicsep/algebraic_cf.hpp"

#include <algorithm>

namespace cubicsep {

namespace {

// 2^e with |root| < 2^e for every root of p.
Rational root_bound(const IntPolynomial& p)
{
    Integer b = 1 + ceil(make_rational(p.height(), abs(p.leading())));
    return Rational(pow(Integer(2), bit_length(b)));
}

// Largest integer f with sign(v - f) >= 0, given cmp(y) = sign(v - y) and a starting guess.
Integer floor_by(const auto& cmp, Integer f)
{
    while (cmp(Rational(f)) < 0)
        --f;
    while (cmp(Rational(f + 1)) >= 0)
        ++f;
    return f;
}

Integer nearest_by(const auto& cmp, const Integer& guess)
{
    Integer f = floor_by(cmp, guess);
    int c = cmp(Rational(f) + Rational(1, 2));
    if (c < 0)
        return f;
    if (c > 0)
        return f + 1;
    Integer g = f + 1;
    return abs(f) < abs(g) ? f : g;
}

}  // namespace

AlgebraicReal AlgebraicReal::in_interval(const IntPolynomial& p0, const Rational& lo, const Rational& hi)
{
    IntPolynomial p = p0.normalized();
    if (p.degree() < 2)
        throw DomainError("algebraic real needs degree >= 2");
    if (!is_squarefree(p))
        throw DomainError("minimal polynomial must be squarefree");
    if (!rational_roots(p).empty())
        throw DomainError("polynomial has a rational root");
    auto roots = roots_in(p, lo, hi);
    if (roots.size() != 1)
        throw DomainError("interval must hold exactly one root, found " + std::to_string(roots.size()));
    return AlgebraicReal(p, roots[0]);
}

AlgebraicReal AlgebraicReal::nearest(const IntPolynomial& p0, const Rational& target)
{
    IntPolynomial p = p0.normalized();
    if (p.degree() < 2)
        throw DomainError("algebraic real needs degree >= 2");
    auto roots = isolate_real_roots(p);
    if (roots.empty())
        throw DomainError("polynomial has no real root");
    // Shrink until the closest root is decided by interval distance.
    for (unsigned bits = 4;; bits += 8) {
        std::vector<Interval> dist;
        for (auto& r : roots) {
            refine_bits(r, bits);
            dist.push_back(abs(r.enclosure() - Interval(target)));
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < dist.size(); ++i)
            if (dist[i].hi < dist[best].hi)
                best = i;
        bool decided = true;
        for (std::size_t i = 0; i < dist.size(); ++i)
            if (i != best && dist[i].lo <= dist[best].hi)
                decided = false;
        if (decided)
            return in_interval(p, roots[best].lo, roots[best].hi);
        if (bits > 4096)
            return in_interval(p, roots[best].lo, roots[best].hi);
    }
}

Interval AlgebraicReal::enclosure(unsigned bits) const
{
    RealRootInterval r = root_;
    refine_bits(r, bits);
    return r.enclosure();
}

CFStream::CFStream(const AlgebraicReal& x) : poly_(x.minpoly()), lo_(x.root().lo), hi_(x.root().hi) {}

Integer CFStream::next()
{
    RealRootInterval r{lo_, hi_, poly_};
    auto cmp = [&](const Rational& y) { return r.compare(y); };
    Integer lo_floor = floor(lo_);
    Integer a;
    // Binary search on [floor(lo), ceil(hi)].
    {
        Integer left = lo_floor, right = ceil(hi_);
        while (right - left > 1) {
            Integer mid = (left + right) / 2;
            if (cmp(Rational(mid)) >= 0)
                left = mid;
            else
                right = mid;
        }
        a = floor_by(cmp, left);
    }

    // xi = a + 1/y with y > 1 a root of y^d P(a + 1/y).
    IntPolynomial next = poly_.taylor_shift(a).reversed().normalized();
    const Rational from = std::max(lo_, Rational(a));
    Rational new_lo = 1 / (hi_ - a);
    Rational new_hi = root_bound(next);
    if (from > a)
        new_hi = std::min(new_hi, Rational(1 / (from - a)));
    new_lo = std::max(new_lo, Rational(1));
    poly_ = std::move(next);
    lo_ = new_lo;
    hi_ = new_hi;

    Integer p = a * p_prev_ + p_prev2_;
    Integer q = a * q_prev_ + q_prev2_;
    p_prev2_ = p_prev_;
    q_prev2_ = q_prev_;
    p_prev_ = p;
    q_prev_ = q;
    cf_.partial_quotients.push_back(a);
    cf_.convergents.push_back(make_rational(p, q));
    return a;
}

CFExpansion cf_expand(const AlgebraicReal& x, std::size_t n)
{
    CFStream s(x);
    for (std::size_t i = 0; i <= n; ++i)
        s.next();
    return s.expansion();
}

std::optional<std::size_t> convergent_index(const AlgebraicReal& x, const Rational& pq, std::size_t max_depth)
{
    CFStream s(x);
    for (std::size_t k = 0; k < max_depth; ++k) {
        s.next();
        const Rational& c = s.expansion().convergents.back();
        if (c == pq)
            return k;
        if (c.get_den() > pq.get_den())
            return std::nullopt;
    }
    throw PrecisionError("is_convergent: depth limit reached before passing the denominator");
}

bool is_convergent(const AlgebraicReal& x, const Rational& pq, std::size_t max_depth)
{
    return convergent_index(x, pq, max_depth).has_value();
}

IntPolynomial convergent_transform(const IntPolynomial& p, const CFExpansion& cf, std::size_t n)
{
    if (n + 1 >= cf.size())
        throw DomainError("convergent_transform: expansion too short for index " + std::to_string(n));
    const int d = p.degree();
    const IntPolynomial num({Integer(-cf.p(n + 1)), cf.p(n)});
    const IntPolynomial den({Integer(-cf.q(n + 1)), cf.q(n)});
    std::vector<IntPolynomial> num_pow{IntPolynomial({Integer(1)})}, den_pow{IntPolynomial({Integer(1)})};
    for (int i = 1; i <= d; ++i) {
        num_pow.push_back(num_pow.back() * num);
        den_pow.push_back(den_pow.back() * den);
    }
    IntPolynomial out;
    for (int i = 0; i <= d; ++i)
        if (p.coeff(i) != 0)
            out = out + num_pow[i] * den_pow[d - i] * p.coeff(i);
    return out;
}

IntPolynomial convergent_transform(const IntPolynomial& p, const AlgebraicReal& x, std::size_t n)
{
    if (p.normalized() != x.minpoly())
        throw DomainError("convergent_transform: root does not belong to the polynomial");
    return convergent_transform(p, cf_expand(x, n + 1), n);
}

Recentered recenter(const IntPolynomial& q, unsigned bits)
{
    if (q.degree() != 3)
        throw DomainError("recenter expects a cubic");
    const Integer disc = poly_discriminant(q);
    if (disc == 0)
        throw DomainError("cubic has a double root");
    const Integer a = q.coeff(3), b = q.coeff(2), c = q.coeff(1);
    const Rational ba = make_rational(b, a);
    auto roots = isolate_real_roots(q);
    auto boxes = root_enclosures(q, bits);

    // 0, 1, 2 index the real roots when disc > 0; for disc < 0, 0 is the real
    // root and 1 the upper member of the conjugate pair.
    std::size_t pick = 0;
    bool complex_pick = false;
    if (disc > 0) {
        // |r_i| < |r_j|  <=>  (r_j - r_i)(r_i + r_j) > 0, and r_i + r_j = -b/a - r_k.
        auto less_mod = [&](std::size_t i, std::size_t j) {
            const std::size_t k = 3 - i - j;
            int sum_sign = -roots[k].compare(-ba);  // sign(r_i + r_j)
            int diff_sign = i < j ? 1 : -1;         // sign(r_j - r_i), roots sorted
            int s = sum_sign * diff_sign;
            if (s != 0)
                return s > 0;
            return i < j;  // equal modulus: smaller real part
        };
        auto least_of = [&](std::initializer_list<std::size_t> ids) {
            std::size_t best = *ids.begin();
            for (std::size_t i : ids)
                if (i != best && less_mod(i, best))
                    best = i;
            return best;
        };
        // Adjacent gaps compare by the middle root against the centroid -b/(3a).
        const int mid = roots[1].compare(-ba / 3);
        if (mid < 0)
            pick = least_of({0, 1});
        else if (mid > 0)
            pick = least_of({1, 2});
        else
            pick = least_of({0, 1, 2});
    } else {
        // 4w^2 - |r - z|^2 = (3ac - b^2)/a^2 decides pair versus mixed distance;
        // |z|^2 - r^2 = (c + b r)/a decides the modulus order.
        const int pair_vs_mixed = sign(Integer(3 * a * c - b * b));
        if (pair_vs_mixed < 0) {
            complex_pick = true;
        } else {
            int mod;  // sign(|z|^2 - r^2)
            if (b == 0)
                mod = sign(c) * sign(a);
            else
                mod = roots[0].compare(make_rational(-c, b)) * sign(b) * sign(a);
            if (mod > 0)
                complex_pick = false;
            else if (mod < 0)
                complex_pick = true;
            else
                complex_pick = roots[0].compare(-ba / 3) > 0;  // real part of z is -b/2a - r/2
        }
        pick = complex_pick ? 1 : 0;
    }

    Integer k;
    const ComplexBox& box = boxes[pick];
    const Integer guess = floor(box.re_lo);
    if (!complex_pick) {
        RealRootInterval r = disc > 0 ? roots[pick] : roots[0];
        k = nearest_by([&](const Rational& y) { return r.compare(y); }, guess);
    } else {
        // Re z = (-b/a - r)/2, so sign(Re z - y) = -sign(r - (-b/a - 2y)).
        const RealRootInterval& r = roots[0];
        k = nearest_by([&](const Rational& y) { return -r.compare(-ba - 2 * y); }, guess);
    }
    return {q.taylor_shift(k), k, box};
}

PairParameters pair_parameters(const AlgebraicReal& x, const Rational& pq,
                               const std::optional<std::pair<Rational, Rational>>& target_uv, unsigned bits)
{
    if (x.degree() != 3)
        throw DomainError("pair_parameters needs a cubic irrational");
    auto idx = convergent_index(x, pq);
    if (!idx)
        throw DomainError("p/q is not a convergent: " + to_string(pq));
    const std::size_t n = *idx;
    const CFExpansion cf = cf_expand(x, n + 1);
    const IntPolynomial& P = x.minpoly();
    const Integer H = P.height();
    const Integer q = pq.get_den();

    PairParameters out;
    out.index = n;
    out.q_next = cf.q(n + 1);
    const IntPolynomial Q = convergent_transform(P, cf, n);
    out.B = abs(Q.leading());
    out.lead_identity = out.B == abs(eval_scaled(P, pq));
    if (target_uv)
        out.tau = target_uv->second - 2;
    out.disc_bound = abs(poly_discriminant(P)) <= 54 * H * H * H * H;

    // q_next is strictly inside ((A-1)q, Aq), so refinement eventually decides it.
    for (unsigned prec = bits + 8;; prec += 32) {
        Interval dist = abs(x.enclosure(prec + 2 * static_cast<unsigned>(bit_length(q))) - Interval(pq));
        if (sign(dist.lo) <= 0)
            continue;
        const Rational q2(q * q);
        out.A = Interval(1 / (q2 * dist.hi), 1 / (q2 * dist.lo));
        if (!out.A.relative_width_within(bits))
            continue;
        const bool lower = (out.A.hi - 1) * q <= out.q_next;
        const bool upper = out.q_next <= out.A.lo * q;
        out.q_next_bracket = lower && upper;
        out.b_bound = out.B * out.A.hi <= 7 * q * H * H;
        if (out.q_next_bracket || prec > bits + 2048)
            break;
    }
    return out;
}

}  // namespace cubicsep
