#pragma once
// Function-field side: Q[t], Q(t), Laurent series in 1/t with |x| = 2^deg,
// series roots of cubics over Q[t] and their continued fractions.

#include "cubicsep/numeric.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cubicsep::ff {

/// Polynomial in t over Q; coeffs()[i] multiplies t^i, no trailing zeros.
class TPoly {
public:
    TPoly() = default;
    explicit TPoly(std::vector<Rational> low_first);
    TPoly(long c) : TPoly(std::vector<Rational>{Rational(c)}) {}
    TPoly(const Rational& c) : TPoly(std::vector<Rational>{c}) {}
    static TPoly t() { return TPoly(std::vector<Rational>{0, 1}); }
    static TPoly monomial(const Rational& c, long k);

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    Rational coeff(long i) const;
    Rational leading() const;
    /// 2^deg, 0 for zero.
    Rational norm() const;

    TPoly derivative() const;
    TPoly monic() const;
    /// p(s(t)).
    TPoly compose(const TPoly& s) const;
    Rational eval(const Rational& x) const;
    std::string to_string() const;

    friend TPoly operator+(const TPoly& a, const TPoly& b);
    friend TPoly operator-(const TPoly& a, const TPoly& b);
    friend TPoly operator*(const TPoly& a, const TPoly& b);
    TPoly operator-() const;
    bool operator==(const TPoly&) const = default;

private:
    std::vector<Rational> c_;
    void trim();
};

/// Quotient and remainder; b must be nonzero.
std::pair<TPoly, TPoly> divmod(const TPoly& a, const TPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
TPoly gcd(const TPoly& a, const TPoly& b);

/// Element of Q(t) with monic, coprime denominator.
struct RatFunc {
    TPoly num, den{1};

    RatFunc() = default;
    RatFunc(TPoly n) : num(std::move(n)) {}
    RatFunc(TPoly n, TPoly d);
    bool is_zero() const { return num.is_zero(); }
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);

/// x = sum coeffs[i] t^(top - i) + O(t^error_degree()). A series with no
/// stored terms is zero to the known precision; its norm is reported as 0.
struct LaurentSeries {
    long top_degree = 0;
    std::vector<Rational> coeffs;

    static LaurentSeries from_poly(const TPoly& p, long error_degree);
    static LaurentSeries zero(long error_degree) { return {error_degree, {}}; }

    long precision() const { return static_cast<long>(coeffs.size()); }
    long error_degree() const { return top_degree - precision(); }
    bool is_zero() const { return coeffs.empty(); }
    Rational coeff(long degree) const;
    /// Terms of degree >= 0; throws PrecisionError when some are unknown.
    TPoly polynomial_part() const;
    LaurentSeries fractional_part() const;
    /// Drops terms of degree <= e.
    LaurentSeries truncated(long e) const;
    /// "d: c_d, c_{d-1}, ..."
    std::string to_string() const;
};

Rational laurent_norm(const LaurentSeries& x);

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator*(const TPoly& a, const LaurentSeries& b);
/// Throws PrecisionError for a series with no known terms.
LaurentSeries inverse(const LaurentSeries& a);

/// sum a[i] x^i with a[i] in Q[t]. Height is the largest coefficient norm.
struct TPolyCubic {
    std::array<TPoly, 4> a;

    static TPolyCubic from_leading(TPoly a3, TPoly a2, TPoly a1, TPoly a0) { return {{a0, a1, a2, a3}}; }
    Rational height() const;
    /// Coefficients share no nonconstant factor.
    bool coprime() const;
    /// No root in Q(t).
    bool irreducible() const;
    /// t -> s(t) in every coefficient.
    TPolyCubic substitute(const TPoly& s) const;
    /// Scales by a rational so coefficients are integral with content 1 and the
    /// leading coefficient has positive leading term.
    TPolyCubic primitive() const;
    std::string to_string() const;
    bool operator==(const TPolyCubic&) const = default;
};

LaurentSeries eval(const TPolyCubic& p, const LaurentSeries& x);

/// Series root x = lead t^degree + lower terms.
struct Branch {
    long degree;
    Rational lead;
    bool operator==(const Branch&) const = default;
};

class UnsupportedBranch : public DomainError {
public:
    using DomainError::DomainError;
};

/// Branches with integral slope and a simple rational leading coefficient.
std::vector<Branch> branches(const TPolyCubic& p);

/// The branch root with `terms` known coefficients. Throws UnsupportedBranch
/// unless lead is a simple root of the edge polynomial for that slope.
LaurentSeries newton_root(const TPolyCubic& p, const Branch& branch, long terms);

struct PolyCF {
    std::vector<TPoly> quotients, p, q;
    std::size_t size() const { return quotients.size(); }
};

/// Quotients a_0..a_n. Throws PrecisionError when x runs out of terms.
PolyCF poly_cf_expand(const LaurentSeries& x, std::size_t n);
/// Same for a branch root, recomputing the series with more terms as needed.
PolyCF poly_cf_expand(const TPolyCubic& p, const Branch& branch, std::size_t n);

/// |x - p/q| exactly; throws PrecisionError if x - p/q is not resolved.
Rational approx_norm(const LaurentSeries& x, const TPoly& p, const TPoly& q);

/// Head T, then entries j = 4k + pos + 1 with
///   numerators   2(3k+1)c, (6k+1)c, 2(3k+2)c^2, (6k+5)c^2
///   denominators 3(4k+1)T, T, 3(4k+3)T(T^2+2c), T.
struct KCFTemplate {
    Rational c{1};
    TPoly T = TPoly::t();

    TPoly numerator(std::size_t j) const;
    TPoly denominator(std::size_t j) const;
    /// 3x^3 - 3T x^2 - 3c x + cT.
    TPolyCubic cubic() const;
    /// The root with leading term that of T.
    Branch branch() const;
};

struct Convergent {
    TPoly p, q;
};

/// Convergents 0 .. count-1 from the three-term recurrence, each divided by gcd(p, q).
std::vector<Convergent> kcf_convergents(const KCFTemplate& tmpl, std::size_t count);

/// D x' = A + B x + C x^2.
struct RiccatiCoeffs {
    TPoly A, B, C, D;
    Rational max_norm() const;
};

/// From x' = -P_t(x) / P_x(x) reduced modulo P, scaled to coprime integral
/// coefficients with lc(D) > 0.
RiccatiCoeffs derive_riccati(const TPolyCubic& p);
/// D (-P_t) - (A + B x + C x^2) P_x has zero pseudo-remainder modulo P.
bool riccati_identity(const TPolyCubic& p, const RiccatiCoeffs& r);

/// Moves the branch to one of norm 1: x -> 1/x when its degree is positive,
/// then x -> x + 1 when negative. The shift can merge several branches into
/// one leading term, so the new root is best taken from to_unit_norm.
std::pair<TPolyCubic, Branch> normalize_unit_norm(const TPolyCubic& p, const Branch& branch);
LaurentSeries to_unit_norm(const LaurentSeries& x);

struct ApproxRow {
    std::size_t index;
    Rational distance, q_norm, height;
    /// distance < |q|^-2.
    bool convergent;
    /// distance <= H^-3 |q|^-2.
    bool pass;
    /// index = 2 mod 4.
    bool designated;
};

std::vector<ApproxRow> ff_approx_check(const TPolyCubic& p, const KCFTemplate& tmpl,
                                       const std::vector<std::size_t>& indices, long terms = 60);

struct ChainRow {
    std::size_t index;
    Rational distance, q_norm;
    /// max(|B|, |C|, |D|/2).
    Rational riccati_bound;
    Rational height;
    /// distance >= 1/(riccati_bound |q|^2) and riccati_bound <= H^4.
    bool first, second;
};

/// The (4,2) chain over the first `count` regular convergents of the
/// normalized branch.
std::vector<ChainRow> chain_42(const TPolyCubic& p, const Branch& branch, std::size_t count);

}  // namespace cubicsep::ff
