#include "cubicsep/hall_thue.hpp"
#include "cubicsep/kernels.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace cubicsep {

namespace {

bool hall_before(const HallRecord& a, const HallRecord& b)
{
    // ratio^2 = x / delta^2
    const Integer lhs = a.x * b.delta * b.delta;
    const Integer rhs = b.x * a.delta * a.delta;
    if (lhs != rhs)
        return lhs > rhs;
    return a.x < b.x;
}

HallRecord make_hall(const Integer& x, const Integer& y, const Integer& delta)
{
    Interval root = sqrt_enclosure(Rational(x), 64);
    return {x, y, delta, root * make_rational(1, delta)};
}

// eps = e/b with 0 <= eps < 1/2, as (e, b).
std::pair<unsigned long, unsigned long> split_eps(const Rational& eps, bool allow_zero)
{
    if (sign(eps) < 0 || (!allow_zero && sign(eps) == 0) || eps >= Rational(1, 2))
        throw DomainError("epsilon out of range: " + to_string(eps));
    if (!eps.get_num().fits_ulong_p() || !eps.get_den().fits_ulong_p() || eps.get_den() > 1000000)
        throw DomainError("epsilon denominator too large");
    return {eps.get_num().get_ui(), eps.get_den().get_ui()};
}

int lex(const FormCoeffs& a, const FormCoeffs& b)
{
    for (int i = 0; i < 4; ++i)
        if (int c = cmp(a[i], b[i]); c)
            return c < 0 ? -1 : 1;
    return 0;
}

bool thue_before(const ThueRecord& a, const ThueRecord& b)
{
    if (a.score.lo != b.score.lo)
        return a.score.lo < b.score.lo;
    if (a.score.hi != b.score.hi)
        return a.score.hi < b.score.hi;
    if (int c = lex(a.a, b.a); c)
        return c < 0;
    if (a.q != b.q)
        return a.q < b.q;
    return a.p < b.p;
}

struct ThueFactors {
    Rational eps;
    std::map<std::pair<long, long>, Interval> cache;

    const Interval& get(long n, long q)
    {
        auto it = cache.find({n, q});
        if (it == cache.end()) {
            Interval up = pow_enclosure(Rational(n), 4 + 2 * eps, 64);
            Interval down = pow_enclosure(Rational(q), Rational(1, 2) - eps, 64);
            it = cache.emplace(std::make_pair(n, q), up / down).first;
        }
        return it->second;
    }
};

}  // namespace

std::optional<HallRecord> hall_delta(const Integer& x)
{
    if (x < 1)
        throw DomainError("hall_delta needs x >= 1");
    const Integer c = x * x * x;
    Integer base;
    mpz_sqrt(base.get_mpz_t(), c.get_mpz_t());
    Integer best_y, best_d = -1;
    for (long off = -1; off <= 2; ++off) {
        Integer y = base + off;
        if (y < 0)
            continue;
        Integer d = abs(Integer(c - y * y));
        if (best_d < 0 || d < best_d) {
            best_d = d;
            best_y = y;
        }
    }
    if (best_d == 0)
        return std::nullopt;
    return make_hall(x, best_y, best_d);
}

bool hall_passes(const Integer& x, const Integer& delta, const Rational& eps)
{
    auto [e, b] = split_eps(eps, true);
    if (delta <= 0)
        return false;
    if (delta * delta >= x)
        return false;
    return pow(delta, 2 * b) < pow(x, b - 2 * e);
}

std::vector<HallRecord> hall_scan(std::uint64_t x_max, const Rational& eps, const Partition& part)
{
    part.validate();
    split_eps(eps, true);
    std::vector<HallRecord> out;
    std::vector<std::uint64_t> xs(kHallBlock), ys(kHallBlock), ds(kHallBlock);
    for (std::uint64_t block = 0; block * kHallBlock < x_max; ++block) {
        if (!part.owns(block))
            continue;
        const std::uint64_t first = block * kHallBlock + 1;
        const std::uint64_t last = std::min(x_max, first + kHallBlock - 1);
        const std::size_t n = last - first + 1;
        if (last <= kernels::kHallWideLimit) {
            for (std::size_t i = 0; i < n; ++i)
                xs[i] = first + i;
            kernels::hall_gap(xs.data(), n, ys.data(), ds.data());
            for (std::size_t i = 0; i < n; ++i) {
                const unsigned __int128 d = ds[i];
                if (d == 0 || d * d >= xs[i])
                    continue;
                Integer x(static_cast<unsigned long>(xs[i])), delta(static_cast<unsigned long>(ds[i]));
                if (hall_passes(x, delta, eps))
                    out.push_back(make_hall(x, Integer(static_cast<unsigned long>(ys[i])), delta));
            }
        } else {
            for (std::uint64_t v = first; v <= last; ++v) {
                auto r = hall_delta(Integer(static_cast<unsigned long>(v)));
                if (r && hall_passes(r->x, r->delta, eps))
                    out.push_back(*r);
            }
        }
    }
    std::sort(out.begin(), out.end(), hall_before);
    return out;
}

std::vector<HallRecord> merge_hall(const std::vector<std::vector<HallRecord>>& parts)
{
    std::vector<HallRecord> out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end(), hall_before);
    return out;
}

std::vector<HallRecord> hall_scan_parallel(std::uint64_t x_max, const Rational& eps, unsigned partitions,
                                           unsigned workers)
{
    return merge_hall(
        run_partitions(partitions, workers, [&](const Partition& p) { return hall_scan(x_max, eps, p); }));
}

std::pair<Integer, Integer> hall_bridge(const Integer& p, const Integer& q)
{
    Integer left = abs(Integer(27 * 16 * (4 * p * p * p + 27 * q * q)));
    Integer a = 108 * q, b = -12 * p;
    Integer right = abs(Integer(a * a - b * b * b));
    return {left, right};
}

Integer thue_eval(const FormCoeffs& a, const Integer& p, const Integer& q)
{
    return ((a[3] * p + a[2] * q) * p + a[1] * q * q) * p + a[0] * q * q * q;
}

ThueResult thue_scan(long a_max, long q_max, const Rational& eps, const Partition& part)
{
    part.validate();
    if (a_max < 1 || q_max < 1)
        throw DomainError("thue_scan needs a_max, q_max >= 1");
    auto [e, b] = split_eps(eps, false);
    ThueFactors factors{eps, {}};

    // Smallest nonzero |F| per (N, q), with its witness.
    struct Best {
        std::uint64_t abs_value;
        FormCoeffs a;
        long p;
        Integer value;
    };
    std::map<std::pair<long, long>, Best> buckets;

    ThueResult res;
    const long side = 2 * a_max + 1;
    const long total = side * side * side * side;
    std::vector<std::int64_t> buf;
    for (long idx = 0; idx < total; ++idx) {
        if (!part.owns(static_cast<std::size_t>(idx)))
            continue;
        std::int64_t a64[4];
        long rest = idx;
        long n_inf = 0;
        for (int i = 0; i < 4; ++i) {
            a64[i] = rest % side - a_max;
            rest /= side;
            n_inf = std::max(n_inf, static_cast<long>(std::abs(a64[i])));
        }
        if (n_inf == 0)
            continue;
        const FormCoeffs a{Integer(a64[0]), Integer(a64[1]), Integer(a64[2]), Integer(a64[3])};
        const Integer n8 = pow(Integer(n_inf), 8);
        for (long q = 1; q <= q_max; ++q) {
            const long reach = 2 * q * (1 + a_max);
            const std::size_t count = static_cast<std::size_t>(2 * reach + 1);
            buf.resize(count);
            const bool fast = kernels::form_eval(a64, q, -reach, count, buf.data());
            for (std::size_t i = 0; i < count; ++i) {
                const long p = -reach + static_cast<long>(i);
                if (std::gcd(p, q) != 1)
                    continue;
                ++res.evaluated;
                Integer value = fast ? Integer(static_cast<long>(buf[i])) : thue_eval(a, Integer(p), Integer(q));
                if (value == 0)
                    continue;
                const Integer mag = abs(value);
                auto key = std::make_pair(n_inf, q);
                auto it = buckets.find(key);
                const std::uint64_t m = mag.fits_ulong_p() ? mag.get_ui() : UINT64_MAX;
                if (it == buckets.end() || m < it->second.abs_value ||
                    (m == it->second.abs_value && (lex(a, it->second.a) < 0 || (lex(a, it->second.a) == 0 && p < it->second.p))))
                    buckets[key] = Best{m, a, p, value};
                if (mag * mag * n8 >= q)
                    continue;
                if (pow(mag, 2 * b) * pow(Integer(n_inf), 8 * b + 4 * e) >= pow(Integer(q), b - 2 * e))
                    continue;
                res.records.push_back({a, Integer(p), Integer(q), value, factors.get(n_inf, q) * Rational(mag)});
            }
        }
    }
    for (const auto& [key, best] : buckets) {
        ThueRecord r{best.a, Integer(best.p), Integer(key.second), best.value,
                     factors.get(key.first, key.second) * Rational(abs(best.value))};
        if (!res.minimum || thue_before(r, *res.minimum))
            res.minimum = r;
    }
    std::sort(res.records.begin(), res.records.end(), thue_before);
    return res;
}

ThueResult merge_thue(const std::vector<ThueResult>& parts)
{
    ThueResult out;
    for (const auto& r : parts) {
        out.records.insert(out.records.end(), r.records.begin(), r.records.end());
        out.evaluated += r.evaluated;
        if (r.minimum && (!out.minimum || thue_before(*r.minimum, *out.minimum)))
            out.minimum = r.minimum;
    }
    std::sort(out.records.begin(), out.records.end(), thue_before);
    return out;
}

ThueResult thue_scan_parallel(long a_max, long q_max, const Rational& eps, unsigned partitions, unsigned workers)
{
    return merge_thue(
        run_partitions(partitions, workers, [&](const Partition& p) { return thue_scan(a_max, q_max, eps, p); }));
}

}  // namespace cubicsep
