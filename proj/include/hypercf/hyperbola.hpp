#pragma once

/**
 * Integer points of the hyperbola y^2 = x^2 - 4nx restricted to x >= 4n, y >= 0.
 *
 * Every point used here is alpha-parametrized:
 *
 *     P(alpha) = ( 4n (alpha+1)^2 / (2 alpha + 1),  4n (alpha+1) alpha / (2 alpha + 1) )
 *
 * which is integral exactly when (2 alpha + 1) | n. For an odd modulus the
 * admissible alphas are (tau - 1)/2 over the divisors tau of n. For an odd
 * semiprime n = pq the named "algebraic subset" is
 *
 *     P0 = (4n, 0)                 alpha = 0
 *     P1 = ((p+q)^2, q^2 - p^2)    not alpha-parametrized
 *     P2 = (q(p+1)^2, q(p^2-1))    alpha = (p-1)/2
 *     P3 = (p(q+1)^2, p(q^2-1))    alpha = (q-1)/2
 *     P4 = ((n+1)^2, n^2-1)        alpha = (n-1)/2
 *
 * The modulus n is passed explicitly to every operation that needs it; a
 * Point carries no curve context.
 */

#include "hypercf/bigint.hpp"
#include "hypercf/primality.hpp"
#include "hypercf/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypercf {

struct Point {
    Natural x;
    Natural y;

    friend bool operator==(const Point&, const Point&) = default;
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    std::string str() const { return "(" + x.get_str() + ", " + y.get_str() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Factorization

struct PrimePower {
    Natural prime;
    unsigned long exponent = 1;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power factorization, primes strictly increasing.
class Factorization {
public:
    Factorization() = default;

    /// Validates primality and merges/sorts the terms.
    explicit Factorization(std::vector<PrimePower> terms) {
        for (auto& t : terms) {
            if (t.exponent == 0) throw std::invalid_argument("exponent must be >= 1");
            if (!is_probable_prime(t.prime))
                throw std::invalid_argument("not a prime: " + t.prime.get_str());
        }
        std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
        for (auto& t : terms) {
            if (!terms_.empty() && terms_.back().prime == t.prime)
                terms_.back().exponent += t.exponent;
            else
                terms_.push_back(std::move(t));
        }
    }

    /// Parses "p^a,q^b,..." (exponent defaults to 1).
    static Factorization parse(std::string_view text) {
        std::vector<PrimePower> terms;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            if (comma == std::string_view::npos) comma = text.size();
            std::string_view item = text.substr(pos, comma - pos);
            while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
            while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
            if (item.empty()) throw std::invalid_argument("empty factor in list");
            std::size_t caret = item.find('^');
            PrimePower pp;
            pp.prime = parse_integer(item.substr(0, caret));
            if (caret != std::string_view::npos) {
                Integer e = parse_integer(item.substr(caret + 1));
                if (e < 1 || !e.fits_ulong_p()) throw std::invalid_argument("bad exponent in '" + std::string(item) + "'");
                pp.exponent = e.get_ui();
            }
            terms.push_back(std::move(pp));
            pos = comma + 1;
        }
        return Factorization(std::move(terms));
    }

    const std::vector<PrimePower>& terms() const { return terms_; }

    Natural value() const {
        Natural v = 1;
        for (const auto& t : terms_) v *= pow(t.prime, t.exponent);
        return v;
    }

    /// All positive divisors, ascending.
    std::vector<Natural> divisors() const {
        std::vector<Natural> out{1};
        for (const auto& t : terms_) {
            const std::size_t base = out.size();
            Natural pk = 1;
            for (unsigned long e = 1; e <= t.exponent; ++e) {
                pk *= t.prime;
                for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// n = p*q with p < q.
    bool is_squarefree_semiprime() const {
        return terms_.size() == 2 && terms_[0].exponent == 1 && terms_[1].exponent == 1;
    }

    std::string str() const {
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += ",";
            s += t.prime.get_str();
            if (t.exponent != 1) s += "^" + std::to_string(t.exponent);
        }
        return s;
    }

private:
    std::vector<PrimePower> terms_;
};

// ---------------------------------------------------------------------------
// Curve membership and the alpha parametrization

inline bool is_on_curve(const Natural& n, const Point& pt) {
    if (pt.y < 0 || pt.x < 4 * n) return false;
    return pt.y * pt.y == pt.x * pt.x - 4 * n * pt.x;
}

inline Point point_from_alpha(const Natural& n, const Natural& alpha) {
    if (alpha < 0) throw std::domain_error("alpha not admissible for n");
    const Natural tau = 2 * alpha + 1;
    if (mpz_divisible_p(n.get_mpz_t(), tau.get_mpz_t()) == 0) throw std::domain_error("alpha not admissible for n");
    const Natural cofactor = n / tau;
    return {4 * cofactor * (alpha + 1) * (alpha + 1), 4 * cofactor * (alpha + 1) * alpha};
}

/// alpha = y / (x - y)
inline Natural alpha_from_point(const Point& pt) {
    const Integer diff = pt.x - pt.y;
    if (diff == 0 || mpz_divisible_p(pt.y.get_mpz_t(), diff.get_mpz_t()) == 0)
        throw std::domain_error("point not alpha-parametrized");
    Natural alpha = pt.y / diff;
    if (alpha < 0) throw std::domain_error("point not alpha-parametrized");
    return alpha;
}

/// <(-alpha, alpha+1), (x, y)> == 0
inline bool scalar_orthogonality(const Natural& alpha, const Point& pt) {
    return -alpha * pt.x + (alpha + 1) * pt.y == 0;
}

// ---------------------------------------------------------------------------
// Group law

/// A point of the same curve with rational coordinates.
struct RationalPoint {
    Rational x;
    Rational y;
    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

inline bool is_on_curve_exact(const Natural& n, const RationalPoint& pt) {
    if (pt.y.sign() < 0 || pt.x < Rational(4 * n)) return false;
    return pt.y * pt.y == pt.x * pt.x - Rational(4 * n) * pt.x;
}

/// Group-law sum in exact rationals:
///   x = ((x1 - 2n)(x2 - 2n) + y1 y2) / 2n + 2n,   y = (y1 (x2 - 2n) + y2 (x1 - 2n)) / 2n
/// The integer points are not closed under this law; most sums have denominators
/// dividing n.
inline RationalPoint add_points_exact(const Natural& n, const Point& a, const Point& b) {
    if (!is_on_curve(n, a) || !is_on_curve(n, b)) throw std::domain_error("points not composable");
    const Integer two_n = 2 * n;
    const Integer ax = a.x - two_n;
    const Integer bx = b.x - two_n;
    return {Rational(ax * bx + a.y * b.y, two_n) + Rational(two_n), Rational(a.y * bx + b.y * ax, two_n)};
}

/// Integral group-law sum; (4n, 0) is the identity. Throws when the sum is not
/// an integer point.
inline Point add_points(const Natural& n, const Point& a, const Point& b) {
    const RationalPoint s = add_points_exact(n, a, b);
    if (!s.x.is_integer() || !s.y.is_integer()) throw std::domain_error("points not composable");
    return {s.x.num(), s.y.num()};
}

inline Point identity_point(const Natural& n) { return {4 * n, 0}; }

// ---------------------------------------------------------------------------
// Enumeration

/// P0..P4 of an odd semiprime, with their alphas (P1 has none).
struct AlgebraicSubset {
    Natural p, q, n;
    Natural alpha2, alpha3, alpha4;
    Point p0, p1, p2, p3, p4;
};

inline AlgebraicSubset algebraic_subset(const Natural& p, const Natural& q) {
    if (p < 3 || q <= p || mpz_even_p(p.get_mpz_t()) || mpz_even_p(q.get_mpz_t()))
        throw std::invalid_argument("algebraic subset needs odd primes 3 <= p < q");
    AlgebraicSubset s;
    s.p = p;
    s.q = q;
    s.n = p * q;
    s.alpha2 = (p - 1) / 2;
    s.alpha3 = (q - 1) / 2;
    s.alpha4 = (s.n - 1) / 2;
    s.p0 = identity_point(s.n);
    s.p1 = {(p + q) * (p + q), q * q - p * p};
    s.p2 = point_from_alpha(s.n, s.alpha2);
    s.p3 = point_from_alpha(s.n, s.alpha3);
    s.p4 = point_from_alpha(s.n, s.alpha4);
    return s;
}

/// The explicit polynomial coordinates of P0..P4 in (alpha2, alpha3), with alpha4 = (n-1)/2.
/// Index 2 is the alpha2 point q(p+1)^2 and index 3 the alpha3 point p(q+1)^2; the
/// published listing prints these two expansions under each other's labels.
inline std::vector<Point> polynomial_points(const Natural& a2, const Natural& a3) {
    const Natural n = (2 * a2 + 1) * (2 * a3 + 1);
    const Natural a4 = (n - 1) / 2;
    return {
        {16 * a2 * a3 + 8 * a2 + 8 * a3 + 4, 0},
        {4 * a2 * a2 + 8 * a2 * a3 + 4 * a3 * a3 + 8 * a2 + 8 * a3 + 4,
         abs(Integer(4 * a2 * a2 - 4 * a3 * a3 + 4 * a2 - 4 * a3))},
        {8 * a2 * a2 * a3 + 4 * a2 * a2 + 16 * a2 * a3 + 8 * a2 + 8 * a3 + 4,
         8 * a2 * a2 * a3 + 4 * a2 * a2 + 8 * a2 * a3 + 4 * a2},
        {8 * a2 * a3 * a3 + 16 * a2 * a3 + 4 * a3 * a3 + 8 * a2 + 8 * a3 + 4,
         8 * a2 * a3 * a3 + 8 * a2 * a3 + 4 * a3 * a3 + 4 * a3},
        {4 * a4 * a4 + 8 * a4 + 4, 4 * a4 * a4 + 4 * a4},
    };
}

/// One point per divisor tau of n (alpha = (tau-1)/2), plus P1 for a squarefree
/// semiprime. Sorted by x ascending.
inline std::vector<Point> enumerate_points(const Factorization& fact) {
    if (fact.terms().empty()) throw std::invalid_argument("empty factorization");
    if (fact.terms().front().prime == 2) throw std::invalid_argument("even modulus unsupported");
    const Natural n = fact.value();
    std::vector<Point> pts;
    for (const auto& tau : fact.divisors()) pts.push_back(point_from_alpha(n, (tau - 1) / 2));
    if (fact.is_squarefree_semiprime()) {
        const auto& p = fact.terms()[0].prime;
        const auto& q = fact.terms()[1].prime;
        pts.push_back({(p + q) * (p + q), q * q - p * p});
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

// ---------------------------------------------------------------------------
// Ratio identities

/// (p+1)/(p-1) = alpha_i/alpha_j in lowest terms, for odd p >= 3.
inline std::pair<Natural, Natural> split_ratio(const Natural& p) {
    if (p < 3) throw std::invalid_argument("split_ratio needs p >= 3");
    if (mpz_even_p(p.get_mpz_t())) throw std::invalid_argument("gcd(p+1,p-1)=1, theorem inapplicable");
    return {(p + 1) / 2, (p - 1) / 2};
}

/// delta with alpha_i^a - alpha_j^a = (alpha_i + alpha_j) * delta, a even:
///   delta = sum_{k=0}^{a/2-1} alpha_i^{2(a/2-1-k)} alpha_j^{2k}
inline Natural power_identity_delta(const Natural& alpha_i, const Natural& alpha_j, unsigned long a) {
    if (a < 2 || a % 2 != 0) throw std::invalid_argument("identity defined for even exponents");
    if (alpha_i != alpha_j + 1) throw std::invalid_argument("power identity needs alpha_i = alpha_j + 1");
    const unsigned long beta = a / 2;
    const Natural ai2 = alpha_i * alpha_i;
    const Natural aj2 = alpha_j * alpha_j;
    Natural delta = 0;
    for (unsigned long k = 0; k < beta; ++k) delta += pow(ai2, beta - 1 - k) * pow(aj2, k);
    return delta;
}

/// The (a), (b), (c) system in P = alpha2*alpha3, S = alpha2 + alpha3.
inline bool verify_ps_system(const Natural& alpha2, const Natural& alpha3, const Natural& n) {
    const Integer P = alpha2 * alpha3;
    const Integer S = alpha2 + alpha3;
    const bool a = 4 * P + 2 * S + 1 == n;

    // (b) with both sides multiplied by 4 to stay in the integers
    const Integer lhs_b = 16 * P * P * P + 4 * S * S * S + (32 * S + 28) * P * P + (20 * P + 10 - n) * S * S +
                          (34 - 2 * n) * P * S + (14 - 6 * n) * P + (8 - 4 * n) * S;
    const Integer rhs_b4 = n * (n + 1) * (n + 1) - 4 * n * n + 8 * n - 8;
    const bool b = 4 * lhs_b == rhs_b4;

    const Integer lhs_c = (8 * P * P + 4 * S * S + 12 * P * S + 10 * P + (6 - n) * S - n + 2) * (2 * P + S);
    const bool c = 4 * lhs_c == n * (n * n - 1);
    return a && b && c;
}

/// Reduced x/y.
inline Rational ratio_of_point(const Point& pt) {
    if (pt.y == 0) throw std::domain_error("ratio undefined at P_0");
    return Rational(pt.x, pt.y);
}

struct ConjectureReport {
    bool p1_sum_equals_p3_sum = false;
    bool sums_in_pqn = false;
    std::vector<Rational> ratios;  // reduced x/y of P1..P4
};

/// Evaluates both claims about the reduced ratios of P1..P4; reports, never assumes.
inline ConjectureReport check_conjecture(const Factorization& fact) {
    if (!fact.is_squarefree_semiprime() || fact.terms()[0].prime == 2)
        throw std::invalid_argument("conjecture check needs an odd semiprime p*q, p < q");
    const auto s = algebraic_subset(fact.terms()[0].prime, fact.terms()[1].prime);
    ConjectureReport r;
    for (const Point* pt : {&s.p1, &s.p2, &s.p3, &s.p4}) r.ratios.push_back(ratio_of_point(*pt));
    auto sum = [](const Rational& x) { return Integer(x.num() + x.den()); };
    r.p1_sum_equals_p3_sum = sum(r.ratios[0]) == sum(r.ratios[2]);
    r.sums_in_pqn = std::all_of(r.ratios.begin(), r.ratios.end(), [&](const Rational& x) {
        const Integer v = sum(x);
        return v == s.p || v == s.q || v == s.n;
    });
    return r;
}

}  // namespace hypercf
