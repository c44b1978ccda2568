#pragma once

/**
 * Continued-fraction factoring of an odd semiprime n through the hyperbola
 * structure.
 *
 * With alpha_j4 = (n-1)/2 the point P4 gives the ratio r4 = (alpha_j4+1)/alpha_j4.
 * For a suitable small delta > 0 the convergents of r4 + delta include
 * (alpha_j3+1)/alpha_j3 where 2*alpha_j3 + 1 = q is a prime factor, so
 * gcd(n, p_k + q_k) exposes q. The search walks a schedule of delta
 * candidates i / 10^m for i = 1..b and gcd-tests every convergent.
 */

#include "hypercf/bigint.hpp"
#include "hypercf/continued_fraction.hpp"
#include "hypercf/primality.hpp"
#include "hypercf/rational.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypercf {

enum class DeltaVariant : std::uint8_t {
    Raw,     // i / 10^m
    Scaled,  // (1+alpha_j4)/alpha_j4 * i/10^m - 1/alpha_j4
};

inline std::string_view to_string(DeltaVariant v) { return v == DeltaVariant::Raw ? "raw" : "scaled"; }

inline DeltaVariant parse_variant(std::string_view s) {
    if (s == "raw" || s == "RAW") return DeltaVariant::Raw;
    if (s == "scaled" || s == "SCALED") return DeltaVariant::Scaled;
    throw std::invalid_argument("unknown delta variant '" + std::string(s) + "'");
}

struct DeltaCandidate {
    Natural i;
    std::size_t m = 0;  // power-of-ten exponent
    DeltaVariant variant = DeltaVariant::Raw;
    Rational value;

    bool positive() const { return value.sign() > 0; }
    friend bool operator==(const DeltaCandidate&, const DeltaCandidate&) = default;
};

/// Search parameters. b = 10^bound_exponent.
struct AttackConfig {
    unsigned bound_exponent = 2;
    std::vector<DeltaVariant> variants{DeltaVariant::Raw};
    std::optional<std::size_t> max_convergents_per_target;
    unsigned workers = 1;
    /// Use floor(digits10(n)/2) + 1 + digits10(i) as the exponent instead of
    /// floor(digits10(alpha_j4)/2) + digits10(i).
    bool literal_exponent = false;

    Natural bound() const { return pow10(bound_exponent); }

    void validate() const {
        if (bound_exponent < 1) throw std::invalid_argument("bound exponent must be >= 1");
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");
        if (variants.empty()) throw std::invalid_argument("at least one delta variant required");
    }
};

enum class AttackStatus : std::uint8_t { Factored, Exhausted };

inline std::string_view to_string(AttackStatus s) { return s == AttackStatus::Factored ? "FACTORED" : "EXHAUSTED"; }

struct AttackResult {
    AttackStatus status = AttackStatus::Exhausted;
    Natural factor_small;
    Natural factor_large;
    Natural gcd_hit;  // the gcd value that was found (either factor)
    std::optional<DeltaCandidate> delta_used;
    std::optional<Convergent> convergent;
    std::size_t convergent_index = 0;
    /// true when a perfect-power pre-check produced the factors
    bool perfect_power = false;
    // deterministic counters up to and including the winning candidate
    std::uint64_t candidates_tried = 0;
    std::uint64_t gcd_tests = 0;
    // total work including candidates tested past the winner by other workers
    std::uint64_t work_candidates = 0;
    std::uint64_t work_gcd_tests = 0;
    std::chrono::nanoseconds elapsed{0};
};

/// Result fields that must agree between runs: everything except timings and total work.
inline bool same_outcome(const AttackResult& a, const AttackResult& b) {
    return a.status == b.status && a.factor_small == b.factor_small && a.factor_large == b.factor_large &&
           a.gcd_hit == b.gcd_hit && a.delta_used == b.delta_used && a.convergent == b.convergent &&
           a.convergent_index == b.convergent_index && a.perfect_power == b.perfect_power &&
           a.candidates_tried == b.candidates_tried && a.gcd_tests == b.gcd_tests;
}

// ---------------------------------------------------------------------------

/// (alpha_j4 + 1) / alpha_j4 with alpha_j4 = (n-1)/2, i.e. reduced x/y of P4.
inline Rational p4_ratio(const Natural& n) {
    if (n < 3 || mpz_even_p(n.get_mpz_t())) throw std::invalid_argument("even modulus unsupported");
    const Natural aj = (n - 1) / 2;
    return Rational(aj + 1, aj);
}

inline std::size_t delta_exponent(const Natural& i, const Natural& alpha_j4) {
    return digits10(alpha_j4) / 2 + digits10(i);
}

/// Exponent as printed in the algorithm listing, keyed on the digits of n.
inline std::size_t literal_delta_exponent(const Natural& i, const Natural& n) {
    return digits10(n) / 2 + 1 + digits10(i);
}

inline DeltaCandidate make_delta(const Natural& i, const Natural& alpha_j4, DeltaVariant variant, std::size_t m) {
    if (i < 1) throw std::invalid_argument("delta schedule index must be >= 1");
    const Rational raw(i, pow10(m));
    DeltaCandidate c{i, m, variant, raw};
    if (variant == DeltaVariant::Scaled) c.value = Rational(alpha_j4 + 1, alpha_j4) * raw - Rational(1, alpha_j4);
    return c;
}

inline DeltaCandidate delta_schedule(const Natural& i, const Natural& alpha_j4, DeltaVariant variant) {
    return make_delta(i, alpha_j4, variant, delta_exponent(i, alpha_j4));
}

struct DeltaWindow {
    Rational low;   // exclusive
    Rational high;  // inclusive
    bool contains(const Rational& d) const { return low < d && d <= high; }
};

/// ((aj4 - aj3)/(aj4 aj3), (1 + aj4 - aj3)/(aj4 aj3)], requires 3*aj3 < aj4.
inline DeltaWindow delta_window(const Natural& alpha_j3, const Natural& alpha_j4) {
    if (alpha_j3 < 1 || !(3 * alpha_j3 < alpha_j4)) throw std::invalid_argument("window requires 3*alpha_j3 < alpha_j4");
    const Natural prod = alpha_j4 * alpha_j3;
    return {Rational(alpha_j4 - alpha_j3, prod), Rational(1 + alpha_j4 - alpha_j3, prod)};
}

struct DeltaHit {
    Natural factor;
    Convergent convergent;
    std::size_t index = 0;
};

struct DeltaTestOutcome {
    std::optional<DeltaHit> hit;
    std::uint64_t gcd_tests = 0;
};

/// Streams the convergents of r4 + delta and gcd-tests p_k + q_k against n.
inline DeltaTestOutcome test_delta_counted(const Natural& n, const Rational& r4, const Rational& delta,
                                           std::optional<std::size_t> max_convergents = std::nullopt) {
    DeltaTestOutcome out;
    ConvergentStream stream(r4 + delta);
    Integer sum, g;
    for (auto c = stream.next(); c; c = stream.next()) {
        if (max_convergents && c->index >= *max_convergents) break;
        ++out.gcd_tests;
        sum = c->p + c->q;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), sum.get_mpz_t());
        if (g > 1 && g < n) {
            const std::size_t k = c->index;
            out.hit = DeltaHit{g, std::move(*c), k};
            break;
        }
    }
    return out;
}

inline std::optional<DeltaHit> test_delta(const Natural& n, const Rational& r4, const Rational& delta,
                                          std::optional<std::size_t> max_convergents = std::nullopt) {
    if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
    return test_delta_counted(n, r4, delta, max_convergents).hit;
}

// ---------------------------------------------------------------------------

namespace detail {

inline void fill_factors(AttackResult& r, const Natural& n, const Natural& g) {
    Natural other = n / g;
    r.gcd_hit = g;
    r.factor_small = g < other ? g : other;
    r.factor_large = g < other ? other : g;
    r.status = AttackStatus::Factored;
    if (r.factor_small * r.factor_large != n) throw std::logic_error("factor product mismatch");
}

/// Rejects even/prime inputs; returns a finished result for perfect powers.
inline std::optional<AttackResult> precheck(const Natural& n) {
    if (n <= 4) throw std::invalid_argument("modulus must be > 4");
    if (mpz_even_p(n.get_mpz_t())) throw std::invalid_argument("even modulus unsupported");
    if (is_probable_prime(n)) throw std::invalid_argument("input prime");
    if (auto pp = perfect_power_root(n)) {
        AttackResult r;
        r.perfect_power = true;
        fill_factors(r, n, pp->first);
        return r;
    }
    return std::nullopt;
}

/// The candidate for (i, variant), shared by sequential and sharded scans.
inline DeltaCandidate candidate_for(const Natural& i, const Natural& n, const Natural& alpha_j4,
                                    DeltaVariant variant, const AttackConfig& cfg) {
    const std::size_t m = cfg.literal_exponent ? literal_delta_exponent(i, n) : delta_exponent(i, alpha_j4);
    return make_delta(i, alpha_j4, variant, m);
}

}  // namespace detail

/// Sequential scan i = 1..b; variants in configured order at each i.
inline AttackResult attack(const Natural& n, const AttackConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    if (auto r = detail::precheck(n)) {
        r->elapsed = std::chrono::steady_clock::now() - t0;
        return *r;
    }
    const Natural alpha_j4 = (n - 1) / 2;
    const Rational r4 = p4_ratio(n);
    const Natural b = cfg.bound();

    AttackResult result;
    for (Natural i = 1; i <= b; ++i) {
        for (DeltaVariant v : cfg.variants) {
            DeltaCandidate cand = detail::candidate_for(i, n, alpha_j4, v, cfg);
            if (!cand.positive()) continue;
            ++result.candidates_tried;
            auto outcome = test_delta_counted(n, r4, cand.value, cfg.max_convergents_per_target);
            result.gcd_tests += outcome.gcd_tests;
            if (outcome.hit) {
                detail::fill_factors(result, n, outcome.hit->factor);
                result.convergent_index = outcome.hit->index;
                result.convergent = std::move(outcome.hit->convergent);
                result.delta_used = std::move(cand);
                result.work_candidates = result.candidates_tried;
                result.work_gcd_tests = result.gcd_tests;
                result.elapsed = std::chrono::steady_clock::now() - t0;
                return result;
            }
        }
    }
    result.work_candidates = result.candidates_tried;
    result.work_gcd_tests = result.gcd_tests;
    result.elapsed = std::chrono::steady_clock::now() - t0;
    return result;
}

/// d = e^-1 mod (p-1)(q-1) via the extended Euclidean algorithm.
inline Natural recover_private_key(const Natural& p, const Natural& q, const Natural& e) {
    if (p < 3 || q < 3 || p == q) throw std::invalid_argument("p and q must be distinct odd primes");
    const Natural phi = (p - 1) * (q - 1);
    auto d = mod_inverse(e, phi);
    if (!d || *d == 0) throw std::invalid_argument("e shares factor with phi(n)");
    return *d;
}

}  // namespace hypercf
