#include "cubicsep/laurent_ff.hpp"
#include "cubicsep/int_polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace cubicsep;
using namespace cubicsep::ff;

namespace {

const TPoly t = TPoly::t();

TPoly random_tpoly(std::mt19937_64& rng, long max_deg, long bound)
{
    std::uniform_int_distribution<long> deg(0, max_deg), c(-bound, bound);
    std::vector<Rational> v(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : v)
        x = c(rng);
    return TPoly(v);
}

TPolyCubic random_cubic(std::mt19937_64& rng, long max_deg, long bound)
{
    TPolyCubic p;
    for (auto& c : p.a)
        c = random_tpoly(rng, max_deg, bound);
    while (p.a[3].is_zero())
        p.a[3] = random_tpoly(rng, max_deg, bound);
    return p;
}

LaurentSeries random_series(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> top(-5, 5), len(1, 8), c(-9, 9);
    LaurentSeries x{top(rng), {}};
    long n = len(rng);
    for (long i = 0; i < n; ++i)
        x.coeffs.push_back(c(rng));
    if (x.coeffs[0] == 0)
        x.coeffs[0] = 1;
    return x;
}

// d/dt, term by term.
LaurentSeries derivative(const LaurentSeries& x)
{
    LaurentSeries d{x.top_degree - 1, {}};
    for (long i = 0; i < x.precision(); ++i)
        d.coeffs.push_back(x.coeffs[static_cast<std::size_t>(i)] * (x.top_degree - i));
    while (!d.coeffs.empty() && d.coeffs[0] == 0) {
        d.coeffs.erase(d.coeffs.begin());
        --d.top_degree;
    }
    return d;
}

// Root of P(t0, x) near the branch, by mpf Newton iteration.
mpf_class numeric_branch(const TPolyCubic& p, const Branch& b, const Rational& t0, unsigned bits)
{
    mpf_class tt(t0, bits);
    std::array<mpf_class, 4> c;
    for (int i = 0; i < 4; ++i)
        c[i] = mpf_class(p.a[i].eval(t0), bits);
    mpf_class x(b.lead, bits);
    for (long k = 0; k < std::labs(b.degree); ++k)
        x = b.degree > 0 ? mpf_class(x * tt) : mpf_class(x / tt);
    for (int it = 0; it < 200; ++it) {
        mpf_class f = ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
        mpf_class df = (3 * c[3] * x + 2 * c[2]) * x + c[1];
        x -= f / df;
    }
    return x;
}

mpf_class eval_series(const LaurentSeries& s, const Rational& t0, unsigned bits)
{
    mpf_class acc(0, bits), tt(t0, bits);
    mpf_class pw(1, bits);
    for (long k = 0; k < std::labs(s.top_degree); ++k)
        pw = s.top_degree > 0 ? mpf_class(pw * tt) : mpf_class(pw / tt);
    for (const auto& c : s.coeffs) {
        acc += mpf_class(c, bits) * pw;
        pw /= tt;
    }
    return acc;
}

// A root in Q(t) specializes to a rational root at every t0 where lc does not vanish.
bool specialization_has_root(const TPolyCubic& p, long t0)
{
    std::vector<Rational> c;
    Integer den = 1;
    for (const auto& a : p.a) {
        c.push_back(a.eval(t0));
        den = den * c.back().get_den();
    }
    if (c[3] == 0)
        return true;
    std::vector<Integer> z;
    for (const auto& r : c)
        z.push_back(Rational(r * den).get_num());
    const IntPolynomial ip(z);
    if (ip.coeff(0) == 0)
        return true;
    return !rational_roots(ip).empty();
}

// |P(x)| <= |P'(x)| 2^(e - terms) with x read as an exact finite sum.
bool residual_ok(const TPolyCubic& p, const LaurentSeries& x)
{
    LaurentSeries padded = x;
    padded.coeffs.resize(padded.coeffs.size() + 40, Rational(0));
    const TPolyCubic dp{{p.a[1], TPoly(2) * p.a[2], TPoly(3) * p.a[3], TPoly()}};
    auto r = eval(p, padded), d = eval(dp, padded);
    REQUIRE_FALSE(d.is_zero());
    const long bound = d.top_degree + x.top_degree - x.precision();
    return r.is_zero() || r.top_degree <= bound;
}

}  // namespace

TEST_CASE("tpoly arithmetic")
{
    TPoly a = t * t + TPoly(1), b = t - TPoly(1);
    auto [q, r] = divmod(a * b + TPoly(3), b);
    CHECK(q == a);
    CHECK(r == TPoly(3));
    CHECK(gcd(a * b, b * b) == b);
    CHECK(gcd(TPoly(2) * t, TPoly(4) * t * t) == t);
    CHECK((t * t).compose(t + TPoly(1)) == t * t + TPoly(2) * t + TPoly(1));
    CHECK(TPoly(0).norm() == 0);
    CHECK((t * t * t).norm() == 8);
    CHECK(TPoly(Rational(1, 2)).norm() == 1);
    CHECK((TPoly(3) * t * t - t + TPoly(Rational(2, 3))).to_string() == "3*t^2 - t + 2/3");
    RatFunc f(t * t - TPoly(1), TPoly(2) * t - TPoly(2));
    CHECK(f.num == TPoly(Rational(1, 2)) * (t + TPoly(1)));
    CHECK(f.den == TPoly(1));
}

TEST_CASE("laurent norm")
{
    auto x = LaurentSeries::from_poly(t * t + TPoly(1), -10) + LaurentSeries{-1, {1}};
    CHECK(laurent_norm(x) == 4);
    CHECK(laurent_norm(LaurentSeries{-1, {1}}) == Rational(1, 2));
    CHECK(laurent_norm(LaurentSeries::zero(-5)) == 0);
    CHECK(x.to_string() == "2: 1, 0, 1, 1");
}

TEST_CASE("ultrametric inequality on random series")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto x = random_series(rng), y = random_series(rng);
        auto s = x + y;
        const Rational nx = laurent_norm(x), ny = laurent_norm(y);
        if (!s.is_zero())
            CHECK(laurent_norm(s) <= std::max(nx, ny));
        if (nx != ny) {
            REQUIRE_FALSE(s.is_zero());
            CHECK(laurent_norm(s) == std::max(nx, ny));
        }
        CHECK(laurent_norm(x * y) == nx * ny);
        auto inv = inverse(x);
        auto one = x * inv;
        CHECK(laurent_norm(inv) * nx == 1);
        CHECK(one.top_degree == 0);
        CHECK(one.coeffs[0] == 1);
        for (std::size_t k = 1; k < one.coeffs.size(); ++k)
            CHECK(one.coeffs[k] == 0);
    }
}

TEST_CASE("newton_root examples")
{
    KCFTemplate one;
    auto a = newton_root(one.cubic(), one.branch(), 3);
    REQUIRE(a.top_degree == 1);
    CHECK(a.coeffs == std::vector<Rational>{1, 0, Rational(2, 3)});
    KCFTemplate two{2};
    auto b = newton_root(two.cubic(), two.branch(), 3);
    CHECK(b.coeffs == std::vector<Rational>{1, 0, Rational(4, 3)});

    auto cube = TPolyCubic::from_leading(1, 0, 0, -t);
    CHECK(branches(cube).empty());
    CHECK_THROWS_AS(newton_root(cube, {0, 1}, 5), UnsupportedBranch);
    CHECK_THROWS_AS(newton_root(cube, {1, 1}, 5), UnsupportedBranch);
    CHECK_THROWS_AS(newton_root(one.cubic(), {1, 2}, 5), UnsupportedBranch);

    auto br = branches(one.cubic());
    REQUIRE(br.size() == 1);
    CHECK(br[0] == Branch{1, 1});
}

TEST_CASE("newton_root residual and numeric agreement")
{
    std::mt19937_64 rng(12);
    int checked = 0;
    for (int i = 0; i < 80 && checked < 30; ++i) {
        auto p = random_cubic(rng, 3, 5);
        for (const auto& b : branches(p)) {
            auto x = newton_root(p, b, 25);
            CHECK(residual_ok(p, x));
            auto longer = newton_root(p, b, 50);
            CHECK(std::equal(x.coeffs.begin(), x.coeffs.end(), longer.coeffs.begin()));
            const Rational t0(Integer(1) << 64);
            mpf_class diff = numeric_branch(p, b, t0, 4096) - eval_series(newton_root(p, b, 40), t0, 4096);
            mpf_class scale(1, 4096);
            for (long k = 0; k < 30 - b.degree; ++k)
                scale /= mpf_class(t0, 4096);
            CHECK(abs(diff) <= scale);
            ++checked;
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("poly_cf_expand")
{
    KCFTemplate one;
    auto x = newton_root(one.cubic(), one.branch(), 60);
    auto cf = poly_cf_expand(x, 8);
    REQUIRE(cf.size() == 9);
    CHECK(cf.quotients[0] == t);
    CHECK(cf.quotients[1].degree() == 1);
    CHECK(cf.quotients[1].leading() == Rational(3, 2));
    for (std::size_t k = 0; k + 1 < cf.size(); ++k) {
        const Rational d = approx_norm(x, cf.p[k], cf.q[k]);
        CHECK(d == 1 / (cf.q[k].norm() * cf.q[k + 1].norm()));
        CHECK(d <= pow(Rational(1, 2), static_cast<long>(2 * k + 1)));
        // p_{k-1} q_k - p_k q_{k-1} is a nonzero constant
        if (k > 0)
            CHECK((cf.p[k - 1] * cf.q[k] - cf.p[k] * cf.q[k - 1]).degree() == 0);
    }
    CHECK_THROWS_AS(poly_cf_expand(newton_root(one.cubic(), one.branch(), 6), 20), PrecisionError);
    auto again = poly_cf_expand(one.cubic(), one.branch(), 20);
    CHECK(again.size() == 21);
}

TEST_CASE("cf convergent identity on random cubics")
{
    std::mt19937_64 rng(13);
    int done = 0;
    for (int i = 0; i < 60 && done < 15; ++i) {
        auto p = random_cubic(rng, 2, 4);
        if (!p.irreducible())
            continue;
        for (const auto& b : branches(p)) {
            auto cf = poly_cf_expand(p, b, 6);
            auto x = newton_root(p, b, 200);
            for (std::size_t k = 0; k + 1 < cf.size(); ++k) {
                CHECK(approx_norm(x, cf.p[k], cf.q[k]) == 1 / (cf.q[k].norm() * cf.q[k + 1].norm()));
                if (k > 0)
                    CHECK(cf.quotients[k].degree() >= 1);
            }
            ++done;
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("kcf convergents")
{
    KCFTemplate one;
    auto conv = kcf_convergents(one, 2);
    REQUIRE(conv.size() == 2);
    CHECK(conv[0].p == t);
    CHECK(conv[0].q == TPoly(1));
    CHECK(conv[1].p == TPoly(3) * t * t + TPoly(2));
    CHECK(conv[1].q == TPoly(3) * t);
    CHECK_THROWS_AS(kcf_convergents(one, 0), DomainError);
}

TEST_CASE("kcf convergents are regular convergents")
{
    for (Rational c : {Rational(1), Rational(2), Rational(-1), Rational(1, 3)}) {
        CAPTURE(to_string(c));
        KCFTemplate tmpl{c};
        auto conv = kcf_convergents(tmpl, 13);
        auto x = newton_root(tmpl.cubic(), tmpl.branch(), 60);
        auto cf = poly_cf_expand(x, 12);
        for (std::size_t k = 0; k < conv.size(); ++k) {
            const Rational qn = conv[k].q.norm();
            CHECK(approx_norm(x, conv[k].p, conv[k].q) * qn * qn < 1);
            bool found = false;
            for (std::size_t j = 0; j < cf.size(); ++j)
                if ((conv[k].p * cf.q[j] - conv[k].q * cf.p[j]).is_zero())
                    found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("the (6k-1)c^2 reading of the fourth numerator breaks at the first period")
{
    KCFTemplate tmpl{1};
    auto x = newton_root(tmpl.cubic(), tmpl.branch(), 60);
    TPoly p2 = 1, q2 = 0, p1 = tmpl.T, q1 = 1;
    bool all = true;
    for (std::size_t j = 1; j <= 8; ++j) {
        TPoly a = tmpl.numerator(j);
        if ((j - 1) % 4 == 3)
            a = TPoly(Rational(6 * static_cast<long>((j - 1) / 4) - 1));
        TPoly p = tmpl.denominator(j) * p1 + a * p2, q = tmpl.denominator(j) * q1 + a * q2;
        p2 = std::exchange(p1, p);
        q2 = std::exchange(q1, q);
        const TPoly g = gcd(p, q);
        const TPoly pr = divmod(p, g).first, qr = divmod(q, g).first;
        const Rational qn = qr.norm();
        all = all && approx_norm(x, pr, qr) * qn * qn < 1;
    }
    CHECK_FALSE(all);
}

TEST_CASE("irreducibility over Q(t)")
{
    CHECK(KCFTemplate{}.cubic().irreducible());
    CHECK(TPolyCubic::from_leading(1, 0, 0, -t).irreducible());
    CHECK_FALSE(TPolyCubic::from_leading(1, 0, 0, -(t * t * t)).irreducible());
    CHECK_FALSE(TPolyCubic::from_leading(1, t, 0, 0).irreducible());

    std::mt19937_64 rng(14);
    int irreducible = 0;
    for (int i = 0; i < 150; ++i) {
        // (a x - b)(c x^2 + d x + e) is reducible by construction
        TPoly a = random_tpoly(rng, 2, 3), b = random_tpoly(rng, 2, 3);
        if (a.is_zero())
            a = TPoly(1);
        TPoly c = random_tpoly(rng, 2, 3), d = random_tpoly(rng, 2, 3), e = random_tpoly(rng, 2, 3);
        if (c.is_zero())
            c = TPoly(1);
        TPolyCubic red{{-(b * e), a * e - b * d, a * d - b * c, a * c}};
        CHECK_FALSE(red.irreducible());

        auto p = random_cubic(rng, 3, 4);
        if (p.irreducible()) {
            ++irreducible;
            bool witness = false;
            for (long t0 = 2; t0 < 40 && !witness; ++t0)
                witness = !specialization_has_root(p, t0);
            CHECK(witness);
        } else {
            for (long t0 = 2; t0 < 12; ++t0)
                CHECK(specialization_has_root(p, t0));
        }
    }
    CHECK(irreducible > 100);
}

TEST_CASE("riccati named examples")
{
    auto cube = TPolyCubic::from_leading(1, 0, 0, -t);
    auto r = derive_riccati(cube);
    CHECK(r.A.is_zero());
    CHECK(r.B == TPoly(1));
    CHECK(r.C.is_zero());
    CHECK(r.D == TPoly(3) * t);
    CHECK(r.max_norm() == 2);
    CHECK(r.max_norm() <= pow(cube.height(), 4));
    CHECK(riccati_identity(cube, r));

    KCFTemplate one;
    auto p = one.cubic();
    auto s = derive_riccati(p);
    CHECK(riccati_identity(p, s));
    CHECK(s.max_norm() <= pow(p.height(), 4));
    // substitute the 60-term series
    auto x = newton_root(p, one.branch(), 60);
    auto lhs = s.D * derivative(x);
    auto rhs = LaurentSeries::from_poly(s.A, lhs.error_degree() - 10) + s.B * x + s.C * (x * x);
    auto diff = lhs - rhs;
    CHECK(diff.is_zero());
    CHECK(diff.error_degree() < -40);

    CHECK_THROWS_AS(derive_riccati(TPolyCubic::from_leading(1, 0, 0, -(t * t * t))), DomainError);
    RiccatiCoeffs wrong = s;
    wrong.A = wrong.A + TPoly(1);
    CHECK_FALSE(riccati_identity(p, wrong));
}

TEST_CASE("riccati on random cubics")
{
    std::mt19937_64 rng(15);
    int done = 0, series_checked = 0;
    while (done < 50) {
        auto p = random_cubic(rng, 3, 6);
        if (!p.irreducible())
            continue;
        ++done;
        auto r = derive_riccati(p);
        CHECK(riccati_identity(p, r));
        CHECK(r.max_norm() <= pow(p.height(), 4));
        CHECK(sign(r.D.leading()) > 0);
        for (const auto& b : branches(p)) {
            auto x = newton_root(p, b, 30);
            auto lhs = r.D * derivative(x);
            auto rhs = LaurentSeries::from_poly(r.A, lhs.error_degree()) + r.B * x + r.C * (x * x);
            CHECK((lhs - rhs).is_zero());
            ++series_checked;
        }
    }
    CHECK(series_checked >= 20);
}

TEST_CASE("unit norm normalization")
{
    std::mt19937_64 rng(16);
    int done = 0;
    for (int i = 0; i < 100 && done < 20; ++i) {
        auto p = random_cubic(rng, 3, 4);
        if (!p.irreducible())
            continue;
        for (const auto& b : branches(p)) {
            auto [np, nb] = normalize_unit_norm(p, b);
            CHECK(nb.degree == 0);
            CHECK(np.height() == p.height());
            auto x = newton_root(p, b, 30);
            auto y = to_unit_norm(x);
            CHECK(laurent_norm(y) == 1);
            CHECK(y.top_degree == 0);
            CHECK(y.coeffs[0] == nb.lead);
            // P'(y) vanishes to the known precision
            auto r = eval(np, y);
            CHECK(r.is_zero());
            CHECK(r.error_degree() < -10);
            ++done;
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("approximation check at the designated convergents")
{
    for (Rational c : {Rational(1), Rational(2), Rational(-1)}) {
        KCFTemplate tmpl{c};
        auto rows = ff_approx_check(tmpl.cubic(), tmpl, {2, 6, 10}, 60);
        REQUIRE(rows.size() == 3);
        for (const auto& r : rows) {
            CHECK(r.height == 2);
            CHECK(r.designated);
            CHECK(r.convergent);
            CHECK(r.pass);
            CHECK(r.distance == 1 / (r.height * r.height * r.height * r.q_norm * r.q_norm));
        }
    }
    KCFTemplate sq{1, t * t};
    auto rows = ff_approx_check(sq.cubic(), sq, {2, 6, 10}, 60);
    for (const auto& r : rows) {
        CHECK(r.height == 4);
        CHECK(r.pass);
    }
    auto info = ff_approx_check(KCFTemplate{}.cubic(), KCFTemplate{}, {3}, 60);
    CHECK_FALSE(info[0].designated);
}

TEST_CASE("(4,2) chain")
{
    auto rows = chain_42(KCFTemplate{}.cubic(), KCFTemplate{}.branch(), 10);
    for (const auto& r : rows) {
        CHECK(r.first);
        CHECK(r.second);
    }
    std::mt19937_64 rng(17);
    int done = 0;
    for (int i = 0; i < 120 && done < 20; ++i) {
        auto p = random_cubic(rng, 3, 4);
        if (!p.irreducible())
            continue;
        for (const auto& b : branches(p)) {
            for (const auto& r : chain_42(p, b, 6)) {
                CHECK(r.first);
                CHECK(r.second);
            }
            ++done;
        }
    }
    CHECK(done >= 10);
}
