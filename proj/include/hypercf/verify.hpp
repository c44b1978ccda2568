#pragma once

// Seeded property suites over random odd semiprimes: the hyperbola identities,
// the delta-window/Legendre oracle, and an empirical check of the ratio-sum
// conjecture.

#include "hypercf/attack.hpp"
#include "hypercf/hyperbola.hpp"
#include "hypercf/primality.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace hypercf::verify {

struct PropertyReport {
    std::string name;
    std::uint64_t trials = 0;
    std::uint64_t passed = 0;
    std::optional<std::string> counterexample;  // first failure
    bool informational = false;                 // reported, never fails the suite

    bool ok() const { return informational || passed == trials; }
};

struct SuiteOptions {
    std::uint64_t trials = 100;
    std::uint64_t seed = 1;
    unsigned max_bits = 16;  // primes are drawn below 2^max_bits
};

/// Uniform odd prime in [3, 2^bits).
template <class Rng>
Natural random_odd_prime(Rng& rng, unsigned bits) {
    if (bits < 3) throw std::invalid_argument("need at least 3 bits for odd primes");
    const Natural hi = (Natural(1) << bits) - 1;
    for (;;) {
        Natural c = random_range(rng, Natural(3), hi);
        mpz_setbit(c.get_mpz_t(), 0);
        if (c <= hi && is_probable_prime(c)) return c;
    }
}

/// Odd semiprime p*q with 3 <= p < q < 2^bits.
template <class Rng>
std::pair<Natural, Natural> random_odd_semiprime(Rng& rng, unsigned bits) {
    for (;;) {
        Natural p = random_odd_prime(rng, bits);
        Natural q = random_odd_prime(rng, bits);
        if (p == q) continue;
        if (q < p) std::swap(p, q);
        return {p, q};
    }
}

inline std::vector<Natural> first_odd_primes(std::size_t count) {
    std::vector<Natural> out;
    Natural c = 3;
    while (out.size() < count) {
        if (is_probable_prime(c)) out.push_back(c);
        c += 2;
    }
    return out;
}

namespace detail {

class Recorder {
public:
    explicit Recorder(std::string name) { report_.name = std::move(name); }
    void check(bool ok, const std::function<std::string()>& describe) {
        ++report_.trials;
        if (ok)
            ++report_.passed;
        else if (!report_.counterexample)
            report_.counterexample = describe();
    }
    PropertyReport take() { return std::move(report_); }

private:
    PropertyReport report_;
};

inline std::string pq_str(const Natural& p, const Natural& q) {
    return "p=" + p.get_str() + " q=" + q.get_str();
}

}  // namespace detail

/// Ratio split, power identities, prime-square cardinality, group law, parametrization,
/// polynomial coordinates, P/S system, totient, monotonicity.
inline std::vector<PropertyReport> theorems_suite(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    detail::Recorder split("split_ratio: sum p, difference 1, coprime");
    detail::Recorder power("power identity: alpha_i^a - alpha_j^a = p*delta, a in {2,4,6,8}");
    detail::Recorder card("prime square t^2: exactly 3 points");
    detail::Recorder p2p3("group law: P2 + P3 = P4");
    detail::Recorder closure("group law: pairwise sums stay on the curve (over Q), x >= 4n, commutative");
    detail::Recorder ident("group law: (4n,0) is the identity");
    detail::Recorder inverse("alpha_from_point inverts point_from_alpha");
    detail::Recorder ortho("<X_alpha, P> = 0 for divisor-derived points");
    detail::Recorder poly("polynomial coordinates of P0..P4");
    detail::Recorder ps("P/S system (a)(b)(c)");
    detail::Recorder totient("phi(n) = 4 alpha2 alpha3");
    detail::Recorder mono("ratios of P2, P3, P4 strictly decreasing");
    detail::Recorder p1ratio("|x/y| of P1 = (alpha2+alpha3+1)/|alpha2-alpha3|");

    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const Natural p = random_odd_prime(rng, opt.max_bits);
        const auto [ai, aj] = split_ratio(p);
        split.check(ai + aj == p && ai - aj == 1 && gcd(ai, aj) == 1 && Rational(ai, aj) == Rational(p + 1, p - 1),
                    [&] { return "p=" + p.get_str(); });
        bool pw = true;
        for (unsigned long a : {2UL, 4UL, 6UL, 8UL})
            pw = pw && (pow(ai, a) - pow(aj, a) == p * power_identity_delta(ai, aj, a));
        power.check(pw, [&] { return "p=" + p.get_str(); });
    }

    for (const auto& t : first_odd_primes(100)) {
        const auto pts = enumerate_points(Factorization({{t, 2}}));
        card.check(pts.size() == 3, [&] { return "t=" + t.get_str() + " got " + std::to_string(pts.size()); });
    }

    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const auto [p, q] = random_odd_semiprime(rng, opt.max_bits);
        const auto s = algebraic_subset(p, q);
        const Natural& n = s.n;
        auto where = [&] { return detail::pq_str(p, q); };

        p2p3.check(add_points(n, s.p2, s.p3) == s.p4, where);

        const auto pts = enumerate_points(Factorization({{p, 1}, {q, 1}}));
        bool closed = true;
        bool identity_ok = true;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            identity_ok = identity_ok && add_points(n, identity_point(n), pts[i]) == pts[i];
            for (std::size_t j = i; j < pts.size(); ++j) {
                const RationalPoint sum = add_points_exact(n, pts[i], pts[j]);
                closed = closed && is_on_curve_exact(n, sum) && add_points_exact(n, pts[j], pts[i]) == sum;
            }
        }
        closure.check(closed, where);
        ident.check(identity_ok, where);

        bool inv = true, orth = true;
        for (const Natural& alpha : {Natural(0), s.alpha2, s.alpha3, s.alpha4}) {
            const Point pt = point_from_alpha(n, alpha);
            inv = inv && alpha_from_point(pt) == alpha;
            orth = orth && scalar_orthogonality(alpha, pt);
        }
        inverse.check(inv, where);
        ortho.check(orth, where);

        const auto polys = polynomial_points(s.alpha2, s.alpha3);
        poly.check(polys == std::vector<Point>{s.p0, s.p1, s.p2, s.p3, s.p4}, where);

        ps.check(verify_ps_system(s.alpha2, s.alpha3, n), where);
        totient.check((p - 1) * (q - 1) == 4 * s.alpha2 * s.alpha3, where);

        const Rational r1 = ratio_of_point(s.p1), r2 = ratio_of_point(s.p2), r3 = ratio_of_point(s.p3),
                       r4 = ratio_of_point(s.p4);
        mono.check(r2 > r3 && r3 > r4, where);
        p1ratio.check(r1 == Rational(s.alpha2 + s.alpha3 + 1, s.alpha3 - s.alpha2), where);
    }

    std::vector<PropertyReport> out;
    for (auto* r : {&split, &power, &card, &p2p3, &closure, &ident, &inverse, &ortho, &poly, &ps, &totient, &mono,
                    &p1ratio})
        out.push_back(r->take());
    return out;
}

/// With delta at the window's upper bound, (alpha_j3+1)/alpha_j3 satisfies the
/// Legendre bound against r4 + delta, appears among its convergents, and
/// test_delta finds a nontrivial factor.
inline std::vector<PropertyReport> window_suite(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    detail::Recorder lemma("3*alpha_j3 < alpha_j4");
    detail::Recorder legendre("|r4 + delta - r3| < 1/(2 alpha_j3^2)");
    detail::Recorder conv("r3 is a convergent of r4 + delta");
    detail::Recorder found("test_delta finds a nontrivial factor");

    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const auto [p, q] = random_odd_semiprime(rng, opt.max_bits);
        const Natural n = p * q;
        const Natural aj3 = (q - 1) / 2;
        const Natural aj4 = (n - 1) / 2;
        auto where = [&] { return detail::pq_str(p, q); };

        lemma.check(3 * aj3 < aj4, where);
        const DeltaWindow w = delta_window(aj3, aj4);
        const Rational delta = w.high;
        const Rational r4 = p4_ratio(n);
        const Rational r3(aj3 + 1, aj3);
        const Rational target = r4 + delta;
        legendre.check((target - r3).abs() < Rational(Integer(1), 2 * aj3 * aj3), where);

        bool is_conv = false;
        ConvergentStream cs(target);
        for (auto c = cs.next(); c && !is_conv; c = cs.next()) is_conv = c->value() == r3;
        conv.check(is_conv, where);

        const auto hit = test_delta(n, r4, delta);
        found.check(hit && hit->factor > 1 && hit->factor < n && n % hit->factor == 0, where);
    }
    std::vector<PropertyReport> out;
    for (auto* r : {&lemma, &legendre, &conv, &found}) out.push_back(r->take());
    return out;
}

/// Empirical rate of the ratio-sum conjecture; informational only.
inline std::vector<PropertyReport> conjecture_suite(const SuiteOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    detail::Recorder sums("P1 sum equals P3 sum");
    detail::Recorder members("all ratio sums in {p, q, n}");
    // the P1 ratio dominates P2's only when p^2 > q
    detail::Recorder p1max("P1 ratio is the largest");
    for (std::uint64_t t = 0; t < opt.trials; ++t) {
        const auto [p, q] = random_odd_semiprime(rng, opt.max_bits);
        const auto rep = check_conjecture(Factorization({{p, 1}, {q, 1}}));
        auto where = [&] { return detail::pq_str(p, q); };
        sums.check(rep.p1_sum_equals_p3_sum, where);
        members.check(rep.sums_in_pqn, where);
        p1max.check(rep.ratios[0] > rep.ratios[1], where);
    }
    std::vector<PropertyReport> out;
    for (auto* r : {&sums, &members, &p1max}) {
        auto rep = r->take();
        rep.informational = true;
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace hypercf::verify
