#include "cubicsep/root_metrics.hpp"

#include <algorithm>
#include <map>

namespace cubicsep {

namespace {

// Range of a2 x^2 + a1 x + a0 over x, for a2 > 0.
Interval quad_range(const Rational& a2, const Rational& a1, const Rational& a0, const Interval& x)
{
    auto f = [&](const Rational& v) { return Rational((a2 * v + a1) * v + a0); };
    Rational flo = f(x.lo), fhi = f(x.hi);
    Rational lo = std::min(flo, fhi), hi = std::max(flo, fhi);
    Rational vertex = -a1 / (2 * a2);
    if (x.contains(vertex))
        lo = std::min(lo, f(vertex));
    return {lo, hi};
}

// For a cubic with one real root r and conjugate pair m +- iw:
// m = (-b/a - r)/2, w^2 = (3/4)r^2 + (b/2a)r + c/a - b^2/4a^2, |r - m - iw|^2 = P'(r)/a.
struct PairGeometry {
    Interval re;
    Interval w2;
    Interval dist2;
};

PairGeometry pair_geometry(const IntPolynomial& p, const Interval& r)
{
    const Rational a(p.coeff(3)), b(p.coeff(2)), c(p.coeff(1));
    const Rational ba = b / a, ca = c / a;
    return {(Interval(-ba) - r) * Rational(1, 2), quad_range(Rational(3, 4), ba / 2, ca - ba * ba / 4, r),
            quad_range(3, 2 * ba, ca, r)};
}

Rational two_pow_neg(unsigned bits) { return make_rational(1, pow(Integer(2), bits)); }

void require_cubic(const IntPolynomial& p)
{
    if (p.degree() != 3)
        throw DomainError("expected a cubic");
}

int lex_compare(const IntPolynomial& a, const IntPolynomial& b)
{
    for (int i = 3; i >= 0; --i) {
        int c = cmp(a.coeff(i), b.coeff(i));
        if (c)
            return c < 0 ? -1 : 1;
    }
    return 0;
}

bool record_less(const SurveyRecord& a, const SurveyRecord& b)
{
    if (a.score_lo != b.score_lo)
        return a.score_lo < b.score_lo;
    if (a.score_hi != b.score_hi)
        return a.score_hi < b.score_hi;
    return lex_compare(a.poly, b.poly) < 0;
}

void trim_records(std::vector<SurveyRecord>& recs, std::size_t keep)
{
    std::sort(recs.begin(), recs.end(), record_less);
    if (recs.size() > keep)
        recs.resize(keep);
}

std::optional<Interval> min_opt(const std::optional<Interval>& a, const std::optional<Interval>& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return min(*a, *b);
}

}  // namespace

std::array<ComplexBox, 3> root_enclosures(const IntPolynomial& p, unsigned bits)
{
    require_cubic(p);
    const Integer disc = poly_discriminant(p);
    if (disc == 0)
        throw DomainError("cubic has a double root");
    auto roots = isolate_real_roots(p);
    const Rational tol = two_pow_neg(bits);
    std::array<ComplexBox, 3> out;
    if (disc > 0) {
        for (std::size_t i = 0; i < 3; ++i) {
            refine(roots[i], tol);
            out[i] = {roots[i].lo, roots[i].hi, 0, 0};
        }
        return out;
    }
    RealRootInterval r = roots.at(0);
    for (unsigned prec = bits + 4;; prec += 8) {
        refine_bits(r, prec);
        PairGeometry g = pair_geometry(p, r.enclosure());
        if (sign(g.w2.lo) <= 0)
            continue;
        Interval w = sqrt_enclosure(g.w2, prec);
        if (sign(w.lo) <= 0 || g.re.width() > tol || w.width() > tol)
            continue;
        out[0] = {r.lo, r.hi, 0, 0};
        out[1] = {g.re.lo, g.re.hi, w.lo, w.hi};
        out[2] = {g.re.lo, g.re.hi, -w.hi, -w.lo};
        return out;
    }
}

bool box_contains_zero(const IntPolynomial& p, const ComplexBox& box)
{
    const Interval x = box.re(), y = box.im();
    Interval re(Rational(0)), im(Rational(0));
    for (int i = p.degree(); i >= 0; --i) {
        Interval nre = re * x - im * y + Interval(Rational(p.coeff(i)));
        Interval nim = re * y + im * x;
        re = nre;
        im = nim;
    }
    return re.contains_zero() && im.contains_zero();
}

SepEnclosure separation(const IntPolynomial& p, unsigned bits)
{
    require_cubic(p);
    const Integer disc = poly_discriminant(p);
    if (disc == 0)
        throw DomainError("cubic has a double root");
    auto roots = isolate_real_roots(p);
    for (unsigned prec = bits + 4;; prec += 8) {
        for (auto& r : roots)
            refine_bits(r, prec);
        if (disc > 0) {
            Interval d01 = roots[1].enclosure() - roots[0].enclosure();
            Interval d12 = roots[2].enclosure() - roots[1].enclosure();
            Interval s = min(d01, d12);
            if (sign(s.lo) > 0 && s.relative_width_within(bits))
                return {s.lo, s.hi};
            continue;
        }
        PairGeometry g = pair_geometry(p, roots[0].enclosure());
        Interval s2 = min(g.w2 * Rational(4), g.dist2);
        if (sign(s2.lo) <= 0)
            continue;
        Interval s = sqrt_enclosure(s2, prec);
        if (sign(s.lo) > 0 && s.relative_width_within(bits))
            return {s.lo, s.hi};
    }
}

DepressedCubic depress(const IntPolynomial& r)
{
    require_cubic(r);
    const Integer b3 = r.coeff(3), b2 = r.coeff(2), b1 = r.coeff(1), b0 = r.coeff(0);
    DepressedCubic d;
    d.p_dep = 9 * b3 * b1 - 3 * b2 * b2;
    d.q_dep = 27 * b3 * b3 * b0 - 9 * b3 * b1 * b2 + 2 * b2 * b2 * b2;
    d.rstar = IntPolynomial({d.q_dep, Integer(3 * b3 * d.p_dep), Integer(0), Integer(27 * b3 * b3 * b3)});

    const Rational shift = make_rational(b2, 3 * b3);
    const Rational scale(27 * b3 * b3);
    for (long x = 0; x < 4; ++x)
        if (Rational(d.rstar.eval(Rational(x))) != scale * r.eval(Rational(x) - shift))
            throw std::logic_error("depress: substitution mismatch");
    const Integer disc = poly_discriminant(r);
    const Integer disc_star = poly_discriminant(d.rstar);
    if (disc_star != pow(Integer(27 * b3 * b3), 4) * disc)
        throw std::logic_error("depress: scaled discriminant mismatch");
    if (disc_star != 729 * pow(b3, 6) * (-4 * d.p_dep * d.p_dep * d.p_dep - 27 * d.q_dep * d.q_dep))
        throw std::logic_error("depress: depressed discriminant mismatch");
    return d;
}

SurveyResult sep_survey(const SurveyParams& params, const Partition& part)
{
    part.validate();
    if (params.b_max < 1 || params.h_max < params.b_max)
        throw DomainError("survey needs 1 <= b_max <= h_max");
    if (sign(params.s) <= 0 || sign(params.t) <= 0)
        throw DomainError("survey needs s, t > 0");

    SurveyResult res;
    std::map<std::pair<long, long>, Interval> factors;
    auto factor = [&](long b, long h) -> const Interval& {
        auto it = factors.find({b, h});
        if (it == factors.end()) {
            Interval f = pow_enclosure(Rational(b), 2 + params.s, params.bits + 8) *
                         pow_enclosure(make_rational(h, b), 2 - params.t, params.bits + 8);
            it = factors.emplace(std::make_pair(b, h), f).first;
        }
        return it->second;
    };

    const long h = params.h_max;
    std::size_t pair_index = 0;
    for (long b3 = 1; b3 <= params.b_max; ++b3)
        for (long b2 = 0; b2 <= h; ++b2, ++pair_index) {
            if (!part.owns(pair_index))
                continue;
            for (long b1 = -h; b1 <= h; ++b1)
                for (long b0 = -h; b0 <= h; ++b0) {
                    if (b2 == 0 && b0 <= 0)
                        continue;
                    ++res.examined;
                    IntPolynomial p = IntPolynomial::from_leading({b3, b2, b1, b0});
                    if (poly_discriminant(p) == 0) {
                        ++res.singular;
                        continue;
                    }
                    if (b0 == 0 || !is_irreducible_cubic(p)) {
                        ++res.reducible;
                        continue;
                    }
                    const long height = std::max({b3, std::abs(b2), std::abs(b1), std::abs(b0)});
                    SepEnclosure sep = separation(p, params.bits);
                    Interval score = sep.interval() * factor(b3, height);
                    Interval mahler = sep.interval() * Rational(height * height);

                    if (!res.min_mahler || mahler.lo < res.min_mahler->lo ||
                        (mahler.lo == res.min_mahler->lo && lex_compare(p, *res.mahler_poly) < 0))
                        res.mahler_poly = p;
                    res.min_mahler = min_opt(res.min_mahler, mahler);
                    res.min_score = min_opt(res.min_score, score);

                    res.records.push_back({p, Integer(b3), make_rational(height, b3), sep.lo, sep.hi, score.lo, score.hi});
                    if (res.records.size() > 4 * params.keep + 64)
                        trim_records(res.records, params.keep);
                }
        }
    trim_records(res.records, params.keep);
    return res;
}

SurveyResult merge_surveys(const std::vector<SurveyResult>& parts, std::size_t keep)
{
    SurveyResult out;
    for (const auto& r : parts) {
        out.records.insert(out.records.end(), r.records.begin(), r.records.end());
        out.min_score = min_opt(out.min_score, r.min_score);
        if (r.min_mahler &&
            (!out.min_mahler || r.min_mahler->lo < out.min_mahler->lo ||
             (r.min_mahler->lo == out.min_mahler->lo && lex_compare(*r.mahler_poly, *out.mahler_poly) < 0)))
            out.mahler_poly = r.mahler_poly;
        out.min_mahler = min_opt(out.min_mahler, r.min_mahler);
        out.examined += r.examined;
        out.reducible += r.reducible;
        out.singular += r.singular;
    }
    trim_records(out.records, keep);
    return out;
}

SurveyResult sep_survey_parallel(const SurveyParams& params, unsigned partitions, unsigned workers)
{
    auto parts = run_partitions(partitions, workers, [&](const Partition& p) { return sep_survey(params, p); });
    return merge_surveys(parts, params.keep);
}

}  // namespace cubicsep
