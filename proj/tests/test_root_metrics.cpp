#include "cubicsep/root_metrics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cubicsep;

namespace {

bool box_holds(const ComplexBox& b, std::complex<long double> z, long double slack = 1e-12L)
{
    return b.re_lo.get_d() - slack <= z.real() && z.real() <= b.re_hi.get_d() + slack &&
           b.im_lo.get_d() - slack <= z.imag() && z.imag() <= b.im_hi.get_d() + slack;
}

void check_boxes_against_oracle(const IntPolynomial& p, unsigned bits)
{
    auto boxes = root_enclosures(p, bits);
    auto z = oracle::numeric_roots(p);
    for (const auto& b : boxes) {
        CHECK(box_contains_zero(p, b));
        int hits = 0;
        for (auto r : z)
            hits += box_holds(b, r);
        CHECK(hits == 1);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(boxes[i].disjoint(boxes[j]));
}

}  // namespace

TEST_CASE("enclosures of named cubics")
{
    auto three = root_enclosures(IntPolynomial::from_leading({1, 0, -1, 0}), 20);
    for (const auto& b : three)
        CHECK(b.is_real());
    CHECK(three[0].re_lo <= -1);
    CHECK(three[0].re_hi >= -1);
    CHECK(three[1].re_lo <= 0);
    CHECK(three[2].re_hi >= 1);

    auto cbrt2 = IntPolynomial::from_leading({1, 0, 0, -2});
    auto b = root_enclosures(cbrt2, 20);
    CHECK(b[0].is_real());
    CHECK(std::abs(b[0].re_lo.get_d() - 1.259921) < 1e-5);
    CHECK(std::abs(b[1].re_lo.get_d() + 0.629960) < 1e-5);
    CHECK(std::abs(b[1].im_lo.get_d() - 1.091123) < 1e-5);
    CHECK(b[2].im_hi == -b[1].im_lo);
    for (const auto& x : b) {
        CHECK(x.re_hi - x.re_lo <= Rational(2, 1 << 20));
        CHECK(x.im_hi - x.im_lo <= Rational(2, 1 << 20));
    }
    check_boxes_against_oracle(cbrt2, 20);

    // Discriminant -135: one real root and a conjugate pair.
    auto p = IntPolynomial::from_leading({1, 3, 0, 1});
    CHECK(poly_discriminant(p) == -135);
    auto c = root_enclosures(p, 30);
    CHECK(c[0].is_real());
    CHECK_FALSE(c[1].is_real());
    CHECK(std::abs(c[0].re_lo.get_d() + 3.1038034) < 1e-6);
    check_boxes_against_oracle(p, 30);

    CHECK_THROWS_AS(root_enclosures(IntPolynomial::from_leading({1, -2, 1, 0}), 10), DomainError);
}

TEST_CASE("enclosures contain the oracle roots on random cubics")
{
    std::mt19937_64 rng(11);
    int tested = 0;
    while (tested < 200) {
        auto p = oracle::random_cubic(rng, 30);
        if (poly_discriminant(p) == 0)
            continue;
        ++tested;
        check_boxes_against_oracle(p, 24);
    }
}

TEST_CASE("separation of named cubics")
{
    auto s = separation(IntPolynomial::from_leading({1, 0, -1, 0}), 30);
    CHECK(s.lo == 1);
    CHECK(s.hi == 1);

    auto c = separation(IntPolynomial::from_leading({1, 0, 0, -2}), 40);
    CHECK(c.interval().relative_width_within(40));
    CHECK(c.lo.get_d() == doctest::Approx(std::cbrt(2.0) * std::sqrt(3.0)).epsilon(1e-12));

    auto t = separation(IntPolynomial::from_leading({1, 0, -3, 1}), 30);
    CHECK(t.lo.get_d() == doctest::Approx(1.1847925).epsilon(1e-7));
}

TEST_CASE("separation agrees with the numeric oracle")
{
    std::mt19937_64 rng(23);
    int tested = 0;
    while (tested < 300) {
        auto p = oracle::random_cubic(rng, 40);
        if (poly_discriminant(p) == 0)
            continue;
        ++tested;
        auto s = separation(p, 30);
        REQUIRE(s.interval().relative_width_within(30));
        const double ref = static_cast<double>(oracle::numeric_separation(p));
        CHECK(s.lo.get_d() <= ref * (1 + 1e-9));
        CHECK(s.hi.get_d() >= ref * (1 - 1e-9));
    }
}

TEST_CASE("real separation matches refined isolating intervals")
{
    std::mt19937_64 rng(4);
    int tested = 0;
    while (tested < 100) {
        auto p = oracle::random_cubic(rng, 25);
        if (poly_discriminant(p) <= 0)
            continue;
        ++tested;
        auto s = separation(p, 20);
        auto roots = isolate_real_roots(p);
        for (auto& r : roots)
            refine_bits(r, 40);
        Rational best = roots[1].lo - roots[0].lo;
        best = std::min(best, Rational(roots[2].lo - roots[1].lo));
        const Rational slack = s.hi - s.lo + Rational(1, Integer(1) << 38);
        CHECK(best >= s.lo - slack);
        CHECK(best <= s.hi + slack);
    }
}

TEST_CASE("depress named cubics")
{
    auto a = depress(IntPolynomial::from_leading({1, 0, 1, 0}));
    CHECK(a.rstar == IntPolynomial::from_leading({27, 0, 27, 0}));
    CHECK(a.p_dep == 9);
    CHECK(a.q_dep == 0);

    auto b = depress(IntPolynomial::from_leading({1, 3, 0, 1}));
    CHECK(b.rstar == IntPolynomial::from_leading({27, 0, -81, 81}));
    CHECK(b.p_dep == -27);
    CHECK(b.q_dep == 81);
    CHECK(poly_discriminant(b.rstar) == 729 * Integer(-98415));
    CHECK(poly_discriminant(b.rstar) == pow(Integer(27), 4) * -135);

    auto c = depress(IntPolynomial::from_leading({2, 11, -16, -6}));
    CHECK(c.rstar.leading() == 216);
    CHECK(poly_discriminant(c.rstar) == pow(Integer(108), 4) * 129816);
}

TEST_CASE("depression identities on random cubics")
{
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        auto r = oracle::random_cubic(rng, 1000);
        auto d = depress(r);
        const Integer b3 = r.leading();
        const Integer disc = oracle::resultant_discriminant(d.rstar);
        REQUIRE(disc == pow(Integer(27 * b3 * b3), 4) * oracle::resultant_discriminant(r));
        REQUIRE(disc == 729 * pow(b3, 6) * (-4 * d.p_dep * d.p_dep * d.p_dep - 27 * d.q_dep * d.q_dep));
    }
}

TEST_CASE("small survey")
{
    SurveyParams sp;
    sp.b_max = 1;
    sp.h_max = 2;
    auto r = sep_survey(sp);
    REQUIRE_FALSE(r.records.empty());
    REQUIRE(r.min_score);
    CHECK(r.min_score->lo > 0);
    for (const auto& rec : r.records) {
        CHECK(is_irreducible_cubic(rec.poly));
        CHECK(rec.B * rec.A == rec.poly.height());
        CHECK(rec.score_lo <= rec.score_hi);
    }
    for (std::size_t i = 1; i < r.records.size(); ++i)
        CHECK(r.records[i - 1].score_lo <= r.records[i].score_lo);
}

TEST_CASE("survey mahler minimum matches an exhaustive oracle")
{
    SurveyParams sp;
    sp.b_max = 1;
    sp.h_max = 10;
    sp.bits = 30;
    auto r = sep_survey(sp);
    REQUIRE(r.min_mahler);
    CHECK(r.min_mahler->lo > 0);

    // Oracle: every monic cubic with H <= 10, no symmetry reduction, numeric roots.
    long double best = 1e30L;
    for (long b2 = -10; b2 <= 10; ++b2)
        for (long b1 = -10; b1 <= 10; ++b1)
            for (long b0 = -10; b0 <= 10; ++b0) {
                auto p = IntPolynomial::from_leading({1, b2, b1, b0});
                if (poly_discriminant(p) == 0 || !oracle::rational_root_free(p))
                    continue;
                long h = std::max({1L, std::abs(b2), std::abs(b1), std::abs(b0)});
                best = std::min(best, oracle::numeric_separation(p) * h * h);
            }
    CHECK(r.min_mahler->lo.get_d() <= static_cast<double>(best) * (1 + 1e-8));
    CHECK(r.min_mahler->hi.get_d() >= static_cast<double>(best) * (1 - 1e-8));
}

TEST_CASE("survey partitions merge to the single run")
{
    SurveyParams sp;
    sp.b_max = 3;
    sp.h_max = 4;
    sp.keep = 15;
    auto single = sep_survey(sp);
    for (unsigned parts : {2u, 3u, 7u}) {
        auto merged = sep_survey_parallel(sp, parts, 3);
        REQUIRE(merged.records.size() == single.records.size());
        for (std::size_t i = 0; i < single.records.size(); ++i) {
            CHECK(merged.records[i].poly == single.records[i].poly);
            CHECK(merged.records[i].score_lo == single.records[i].score_lo);
            CHECK(merged.records[i].score_hi == single.records[i].score_hi);
        }
        CHECK(*merged.min_score == *single.min_score);
        CHECK(*merged.min_mahler == *single.min_mahler);
        CHECK(*merged.mahler_poly == *single.mahler_poly);
        CHECK(merged.examined == single.examined);
        CHECK(merged.reducible == single.reducible);
    }
}
