#include "cubicsep/hall_thue.hpp"
#include "cubicsep/int_polynomial.hpp"
#include "cubicsep/kernels.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cubicsep;

namespace {

// Full scan of y in [1, x^(3/2) + 2].
std::pair<Integer, Integer> brute_gap(long x)
{
    using u128 = unsigned __int128;
    const u128 c = u128(x) * x * x;
    u128 best_d = ~u128(0), best_y = 0;
    for (u128 y = 1; y * y <= c + 4 * u128(x) * x + 4; ++y) {
        u128 d = c > y * y ? c - y * y : y * y - c;
        if (d < best_d) {
            best_d = d;
            best_y = y;
        }
    }
    return {Integer(static_cast<unsigned long>(best_y)), Integer(static_cast<unsigned long>(best_d))};
}

}  // namespace

TEST_CASE("hall_delta named values")
{
    auto two = hall_delta(2);
    REQUIRE(two);
    CHECK(two->y == 3);
    CHECK(two->delta == 1);
    CHECK(two->ratio.contains(sqrt_enclosure(Rational(2), 80).lo));

    CHECK_FALSE(hall_delta(4).has_value());
    CHECK_FALSE(hall_delta(1).has_value());

    auto rec = hall_delta(5234);
    REQUIRE(rec);
    auto [y, d] = brute_gap(5234);
    CHECK(rec->y == y);
    CHECK(rec->delta == d);
    CHECK(rec->delta == 17);
    CHECK_THROWS_AS(hall_delta(0), DomainError);
}

TEST_CASE("hall_delta agrees with a full y scan")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> dist(1, 10000);
    for (int i = 0; i < 100; ++i) {
        long x = dist(rng);
        auto [y, d] = brute_gap(x);
        auto rec = hall_delta(x);
        if (d == 0) {
            CHECK_FALSE(rec.has_value());
            continue;
        }
        REQUIRE(rec);
        CHECK(rec->delta == d);
        CHECK(rec->y == y);
    }
}

TEST_CASE("hall kernels agree")
{
    std::vector<std::uint64_t> xs;
    for (std::uint64_t x = 1; x <= 5000; ++x)
        xs.push_back(x);
    for (std::uint64_t x = kernels::kHallDoubleLimit - 3000; x <= kernels::kHallDoubleLimit; ++x)
        xs.push_back(x);
    std::vector<std::uint64_t> y1(xs.size()), d1(xs.size()), y2(xs.size()), d2(xs.size());
    kernels::hall_gap_scalar(xs.data(), xs.size(), y1.data(), d1.data());
    kernels::hall_gap_avx2(xs.data(), xs.size(), y2.data(), d2.data());
    CHECK(y1 == y2);
    CHECK(d1 == d2);
    for (std::size_t i = 0; i < xs.size(); i += 97) {
        auto r = hall_delta(Integer(static_cast<unsigned long>(xs[i])));
        CHECK(Integer(static_cast<unsigned long>(d1[i])) == (r ? r->delta : Integer(0)));
    }
    // the wide scalar path on large x
    std::vector<std::uint64_t> big{kernels::kHallWideLimit - 1, 1000000007ULL, 999999999999ULL};
    std::vector<std::uint64_t> yb(3), db(3);
    kernels::hall_gap_scalar(big.data(), 3, yb.data(), db.data());
    for (int i = 0; i < 3; ++i) {
        auto r = hall_delta(Integer(static_cast<unsigned long>(big[i])));
        REQUIRE(r);
        CHECK(r->delta == Integer(static_cast<unsigned long>(db[i])));
    }
}

TEST_CASE("hall scan")
{
    auto all = hall_scan(10, 0);
    REQUIRE_FALSE(all.empty());
    CHECK(all[0].x == 2);
    CHECK(all[0].y == 3);
    CHECK(all[0].delta == 1);

    auto wide = hall_scan(3000, 0);
    auto tight = hall_scan(3000, Rational(49, 100));
    for (const auto& t : tight)
        CHECK(std::any_of(wide.begin(), wide.end(), [&](const HallRecord& w) { return w.x == t.x; }));
    CHECK(tight.size() <= wide.size());
    for (std::size_t i = 1; i < wide.size(); ++i)
        CHECK(wide[i - 1].ratio.lo >= wide[i].ratio.lo - wide[i].ratio.width());

    // every record satisfies the definition, every non-record fails it
    for (long x = 1; x <= 3000; ++x) {
        auto r = hall_delta(x);
        bool in = std::any_of(wide.begin(), wide.end(), [&](const HallRecord& w) { return w.x == x; });
        CHECK(in == (r && r->delta * r->delta < x));
    }
}

TEST_CASE("hall scan is independent of the partition layout")
{
    auto single = hall_scan(40000, 0);
    for (unsigned parts : {2u, 5u}) {
        auto merged = hall_scan_parallel(40000, 0, parts, 2);
        REQUIRE(merged.size() == single.size());
        for (std::size_t i = 0; i < single.size(); ++i) {
            CHECK(merged[i].x == single[i].x);
            CHECK(merged[i].ratio == single[i].ratio);
        }
    }
}

TEST_CASE("bridge identity on random pairs")
{
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> dist(-1000000000L, 1000000000L);
    for (int i = 0; i < 1000; ++i) {
        auto [l, r] = hall_bridge(dist(rng), dist(rng));
        REQUIRE(l == r);
    }
}

TEST_CASE("thue_eval")
{
    CHECK(thue_eval({-2, 0, 0, 1}, 4, 3) == 10);
    CHECK(thue_eval({-1, 0, 0, 1}, 1, 1) == 0);
    CHECK(thue_eval({-6, -16, 11, 2}, 584, 403) == -2);

    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> d(-40, 40);
    for (int i = 0; i < 300; ++i) {
        FormCoeffs a{d(rng), d(rng), d(rng), d(rng)};
        if (a[3] == 0)
            a[3] = 1;
        long q = std::abs(d(rng)) + 1, p = d(rng);
        auto poly = IntPolynomial::from_leading({a[3], a[2], a[1], a[0]});
        CHECK(thue_eval(a, p, q) == oracle::direct_eval_scaled(poly, p, q));
    }
}

TEST_CASE("form kernels agree")
{
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<std::int64_t> d(-30, 30);
    for (int t = 0; t < 200; ++t) {
        std::int64_t a[4] = {d(rng), d(rng), d(rng), d(rng)};
        std::int64_t q = 1 + std::abs(d(rng)) * 7;
        std::int64_t p0 = -2 * q * 31;
        std::size_t n = static_cast<std::size_t>(4 * q * 31 + 1);
        REQUIRE(kernels::form_bound(a, q, -p0) < (std::uint64_t(1) << 53));
        std::vector<std::int64_t> s(n), v(n);
        kernels::form_eval_scalar(a, q, p0, n, s.data());
        kernels::form_eval_avx2(a, q, p0, n, v.data());
        REQUIRE(s == v);
        CHECK(Integer(static_cast<long>(s[n / 3])) ==
              thue_eval({a[0], a[1], a[2], a[3]}, p0 + static_cast<long>(n / 3), q));
    }
    std::int64_t huge[4] = {1, 0, 0, 1};
    std::vector<std::int64_t> out(3);
    CHECK_FALSE(kernels::form_eval(huge, 1, std::int64_t(1) << 21, 3, out.data()));
}

TEST_CASE("thue scan small ranges")
{
    auto r = thue_scan(1, 3, Rational(1, 10));
    REQUIRE(r.minimum);
    for (const auto& rec : r.records) {
        CHECK(thue_eval(rec.a, rec.p, rec.q) == rec.value);
        CHECK(rec.value != 0);
        CHECK(rec.score.hi < 1);
        auto poly = IntPolynomial::from_leading({rec.a[3], rec.a[2], rec.a[1], rec.a[0]});
        CHECK(abs(rec.value) == abs(eval_scaled(poly, make_rational(rec.p, rec.q))));
    }
    // N >= 1 and |F| >= 1 need q > N^8 |F|^2 >= 1, so q = 1 never qualifies.
    auto none = thue_scan(1, 1, Rational(49, 100));
    CHECK(none.records.empty());
    REQUIRE(none.minimum);
    CHECK(none.minimum->score.lo >= 1);
}

TEST_CASE("thue scan records match a brute force over the same range")
{
    const Rational eps(1, 10);
    auto r = thue_scan(1, 40, eps);
    std::size_t expected = 0;
    for (long a0 = -1; a0 <= 1; ++a0)
        for (long a1 = -1; a1 <= 1; ++a1)
            for (long a2 = -1; a2 <= 1; ++a2)
                for (long a3 = -1; a3 <= 1; ++a3) {
                    if (!a0 && !a1 && !a2 && !a3)
                        continue;
                    for (long q = 1; q <= 40; ++q)
                        for (long p = -4 * q; p <= 4 * q; ++p) {
                            if (std::gcd(p, q) != 1)
                                continue;
                            Integer f = abs(thue_eval({a0, a1, a2, a3}, p, q));
                            // |F| < q^(2/5): |F|^5 < q^2
                            if (f != 0 && pow(f, 5) < Integer(q) * q)
                                ++expected;
                        }
                }
    CHECK(r.records.size() == expected);
    CHECK(expected > 0);
}

TEST_CASE("thue scan is independent of the partition layout")
{
    auto single = thue_scan(2, 12, Rational(1, 20));
    for (unsigned parts : {2u, 7u}) {
        auto merged = thue_scan_parallel(2, 12, Rational(1, 20), parts, 3);
        REQUIRE(merged.records.size() == single.records.size());
        for (std::size_t i = 0; i < single.records.size(); ++i) {
            CHECK(merged.records[i].a == single.records[i].a);
            CHECK(merged.records[i].p == single.records[i].p);
            CHECK(merged.records[i].q == single.records[i].q);
        }
        CHECK(merged.minimum->a == single.minimum->a);
        CHECK(merged.minimum->p == single.minimum->p);
        CHECK(merged.minimum->q == single.minimum->q);
        CHECK(merged.evaluated == single.evaluated);
    }
}
