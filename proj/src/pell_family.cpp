#include "cubicsep/pell_family.hpp"
#include "cubicsep/partition.hpp"
#include "cubicsep/root_metrics.hpp"

#include <algorithm>

namespace cubicsep {

namespace {

void step(Integer& prev, Integer& cur)
{
    Integer next = 2 * cur + prev;
    prev = cur;
    cur = next;
}

struct ComplexInterval {
    Interval re, im;
};

ComplexInterval mul(const ComplexInterval& a, const ComplexInterval& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

bool factor_check(const FamilyMember& m)
{
    const Integer q = m.approx.get_den();
    const unsigned bits = static_cast<unsigned>(3 * bit_length(q) + bit_length(m.v) + 48);
    auto boxes = root_enclosures(m.poly, bits);
    const Rational q3(q * q * q);
    ComplexInterval prod{Interval(q3 * Rational(m.u)), Interval(Rational(0))};
    for (const auto& b : boxes)
        prod = mul(prod, {Interval(m.approx) - b.re(), -b.im()});
    return prod.re.contains(Rational(eval_scaled(m.poly, m.approx))) && prod.im.contains_zero();
}

}  // namespace

std::vector<PellPair> pell_seq(long n_max)
{
    if (n_max < 1)
        throw DomainError("pell_seq needs n_max >= 1");
    std::vector<PellPair> out;
    Integer u_prev = 0, u = 1, v_prev = 1, v = 1;  // u_{-1} = 0, v_{-1} = 1 reproduce the seeds
    for (long n = 0; n <= n_max; ++n) {
        if (n > 0) {
            step(u_prev, u);
            step(v_prev, v);
        }
        out.push_back({n, u, v, 2 * u * u - v * v, n > 0 ? Integer(u_prev * v - v_prev * u) : Integer(0)});
    }
    return out;
}

FamilyMember family_member(long n)
{
    if (n < 1)
        throw DomainError("family members start at n = 1");
    auto seq = pell_seq(n);
    const Integer& u = seq[n].u;
    const Integer& v = seq[n].v;
    const Integer& w = seq[n - 1].u;
    FamilyMember m;
    m.n = n;
    m.u = u;
    m.v = v;
    m.u_prev = w;
    m.poly = IntPolynomial({Integer(-2 * v), Integer(-2 * (3 * v - w)), Integer(5 * u + w), u});
    const Integer p = 4 * u * u * u + 16 * u * u * v + 14 * u * v * v + 4 * v * v * v;
    const Integer q = 8 * u * u * u + 14 * u * u * v + 8 * u * v * v + v * v * v;
    mpz_gcd(m.removed_gcd.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    m.approx = make_rational(p, q);
    m.A = 2 + 4 * u * v * (14 * u * u + 20 * u * v + 7 * v * v);
    return m;
}

AlgebraicReal family_root(const FamilyMember& m)
{
    return AlgebraicReal::in_interval(m.poly, 1, 2);
}

bool IdentityReport::all() const
{
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const IdentityRow& r) {
        return r.magnitude_two && r.irreducible && r.factor_check;
    });
}

IdentityReport verify_family_identity(long n_max, unsigned workers)
{
    if (n_max < 1)
        throw DomainError("verify_family_identity needs n_max >= 1");
    const auto count = static_cast<unsigned>(std::min<long>(n_max, 64));
    auto parts = run_partitions(count, workers, [&](const Partition& part) {
        std::vector<IdentityRow> rows;
        for (long n = 1; n <= n_max; ++n) {
            if (!part.owns(static_cast<std::size_t>(n)))
                continue;
            FamilyMember m = family_member(n);
            IdentityRow r{n, eval_scaled(m.poly, m.approx), false, false, false};
            r.magnitude_two = abs(r.value) == 2;
            r.irreducible = is_irreducible_cubic(m.poly);
            r.factor_check = factor_check(m);
            rows.push_back(r);
        }
        return rows;
    });
    IdentityReport rep;
    for (auto& p : parts)
        rep.rows.insert(rep.rows.end(), p.begin(), p.end());
    std::sort(rep.rows.begin(), rep.rows.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    return rep;
}

std::vector<Integer> predicted_cf_prefix(long n)
{
    if (n < 1)
        throw DomainError("predicted_cf_prefix needs n >= 1");
    const Integer A = family_member(n).A;
    std::vector<Integer> out{1};
    auto twos = [&](long k) { out.insert(out.end(), static_cast<std::size_t>(k), Integer(2)); };
    auto ones = [&](long k) { out.insert(out.end(), static_cast<std::size_t>(k), Integer(1)); };
    twos(n);
    out.push_back(4);
    twos(2 * n + 1);
    out.push_back(3);
    out.push_back(A);
    ones(2);
    twos(2 * n + 1);
    ones(3);
    twos(2 * n + 1);
    ones(2);
    return out;
}

CFMatch verify_cf_pattern(long n)
{
    FamilyMember m = family_member(n);
    CFMatch res;
    res.n = n;
    res.predicted = predicted_cf_prefix(n);
    AlgebraicReal xi = family_root(m);
    // P_n tends to x^3 + (4 + sqrt2) x^2 - (4 sqrt2 + 2) x - 2 sqrt2 (after dividing by u),
    // whose roots are near 1.414, -0.307 and -6.52.
    Interval s2 = sqrt_enclosure(Rational(2), 64);
    Interval gap = abs(xi.enclosure(64) - s2);
    res.root_selection = gap.hi < Rational(1, 2) && roots_in(m.poly, -1, 2).size() == 2 &&
                         roots_in(m.poly, Rational(-1, 10), 2).size() == 1;
    CFStream stream(xi);
    for (std::size_t i = 0; i < res.predicted.size(); ++i) {
        res.actual.push_back(stream.next());
        if (!res.mismatch && res.actual.back() != res.predicted[i])
            res.mismatch = i;
    }
    return res;
}

ClosenessTable closeness_exponents(long n_max, unsigned bits)
{
    if (n_max < 1)
        throw DomainError("closeness_exponents needs n_max >= 1");
    ClosenessTable t;
    for (long n = 1; n <= n_max; ++n) {
        FamilyMember m = family_member(n);
        AlgebraicReal xi = family_root(m);
        const Integer q = m.approx.get_den();
        const Rational scale(q * q * q * m.v);
        ClosenessRow row{n, q, m.poly.height(), {}, make_rational(m.poly.height(), m.v)};
        for (unsigned prec = bits + static_cast<unsigned>(bit_length(Integer(scale.get_num())));; prec += 16) {
            Interval d = abs(xi.enclosure(prec) - Interval(m.approx)) * scale;
            if (sign(d.lo) > 0 && d.relative_width_within(bits)) {
                row.ratio = d;
                break;
            }
        }
        t.rows.push_back(row);
    }
    for (long i = 0; i <= 4; ++i) {
        Rational v = 2 + make_rational(i, 4);
        t.line.push_back({outer_bound_u(v), v, Provenance::outer_bound});
    }
    return t;
}

}  // namespace cubicsep
