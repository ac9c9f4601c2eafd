#pragma once

#include "cubicsep/int_polynomial.hpp"
#include "cubicsep/root_metrics.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cubicsep {

/// A real root of a squarefree integer polynomial with no rational roots,
/// selected by an isolating interval.
class AlgebraicReal {
public:
    /// Picks the unique root of p in [lo, hi]. Throws DomainError when p is
    /// linear, not squarefree, has a rational root, or [lo, hi] does not hold
    /// exactly one root.
    static AlgebraicReal in_interval(const IntPolynomial& p, const Rational& lo, const Rational& hi);
    /// The root of p closest to `target` (ties go to the smaller root).
    static AlgebraicReal nearest(const IntPolynomial& p, const Rational& target);

    const IntPolynomial& minpoly() const { return minpoly_; }
    const RealRootInterval& root() const { return root_; }
    Integer height() const { return minpoly_.height(); }
    int degree() const { return minpoly_.degree(); }
    /// sign(xi - x), exact.
    int compare(const Rational& x) const { return root_.compare(x); }
    /// Enclosure of xi with width at most 2^-bits.
    Interval enclosure(unsigned bits) const;

private:
    AlgebraicReal(IntPolynomial p, RealRootInterval r) : minpoly_(std::move(p)), root_(std::move(r)) {}
    IntPolynomial minpoly_;
    RealRootInterval root_;
};

struct CFExpansion {
    std::vector<Integer> partial_quotients;
    /// p_k / q_k in lowest terms, q_k >= 1.
    std::vector<Rational> convergents;

    std::size_t size() const { return partial_quotients.size(); }
    Integer p(std::size_t k) const { return convergents.at(k).get_num(); }
    Integer q(std::size_t k) const { return convergents.at(k).get_den(); }
};

/// Incremental continued fraction of an algebraic real, exact at every step.
class CFStream {
public:
    explicit CFStream(const AlgebraicReal& x);
    Integer next();
    const CFExpansion& expansion() const { return cf_; }

private:
    IntPolynomial poly_;
    Rational lo_, hi_;
    Integer p_prev_{1}, q_prev_{0}, p_prev2_{0}, q_prev2_{1};
    CFExpansion cf_;
};

/// Partial quotients a_0 .. a_n and their convergents.
CFExpansion cf_expand(const AlgebraicReal& x, std::size_t n);

/// True iff p/q is one of the convergents of x up to the first one whose
/// denominator exceeds q. Throws PrecisionError if that takes more than
/// `max_depth` partial quotients.
bool is_convergent(const AlgebraicReal& x, const Rational& pq, std::size_t max_depth = 4096);

/// Index k with p_k/q_k == pq, if any.
std::optional<std::size_t> convergent_index(const AlgebraicReal& x, const Rational& pq, std::size_t max_depth = 4096);

/// sum a_i (p_n x - p_{n+1})^i (q_n x - q_{n+1})^(d-i) for the convergents n, n+1.
IntPolynomial convergent_transform(const IntPolynomial& p, const CFExpansion& cf, std::size_t n);
IntPolynomial convergent_transform(const IntPolynomial& p, const AlgebraicReal& x, std::size_t n);

struct Recentered {
    IntPolynomial r;
    Integer k;
    /// Box around the chosen root sigma_2 of the input.
    ComplexBox sigma2;
};

/// R(x) = Q(x + k) with k the nearest integer to Re sigma_2, where sigma_2 is a
/// root of the closest root pair of Q. Pair ties go to the pair holding the root
/// of least modulus; inside the pair the least modulus wins, then the smaller
/// real part, then the nonnegative imaginary part. A real part at exactly
/// k + 1/2 goes to the k of smaller absolute value.
Recentered recenter(const IntPolynomial& q, unsigned bits);

struct PairParameters {
    std::size_t index = 0;
    Interval A;
    Integer B;
    std::optional<Rational> tau;
    Integer q_next;
    /// B = q^3 |P(p/q)|.
    bool lead_identity = false;
    /// B <= 7 q H^2 / A.
    bool b_bound = false;
    /// (A - 1) q <= q_next <= A q.
    bool q_next_bracket = false;
    /// |disc P| <= 54 H^4.
    bool disc_bound = false;

    bool all() const { return lead_identity && b_bound && q_next_bracket && disc_bound; }
};

/// A = 1 / (q^2 |xi - p/q|) with relative width 2^-bits, plus B and the flag set.
/// Throws DomainError for non-cubic x or when p/q is not a convergent.
PairParameters pair_parameters(const AlgebraicReal& x, const Rational& pq,
                               const std::optional<std::pair<Rational, Rational>>& target_uv = std::nullopt,
                               unsigned bits = 64);

}  // namespace cubicsep
