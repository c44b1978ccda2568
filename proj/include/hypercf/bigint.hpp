#pragma once

// Arbitrary-precision integer helpers on top of GMP's mpz_class.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hypercf {

using Integer = mpz_class;
/// Nonnegative integer. Nonnegativity is checked where operations require it.
using Natural = mpz_class;

inline Integer parse_integer(std::string_view text) {
    Integer out;
    std::string s(text);
    if (s.empty() || out.set_str(s, 10) != 0)
        throw std::invalid_argument("not an integer: '" + s + "'");
    return out;
}

/// Number of decimal digits of |v|; digits10(0) == 1.
inline std::size_t digits10(const Integer& v) {
    Integer a = abs(v);
    // mpz_sizeinbase may overshoot by one for base 10
    std::size_t d = mpz_sizeinbase(a.get_mpz_t(), 10);
    if (d > 1) {
        Integer lower;
        mpz_ui_pow_ui(lower.get_mpz_t(), 10, d - 1);
        if (a < lower) --d;
    }
    return d;
}

inline Integer pow10(std::size_t exponent) {
    Integer out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
    return out;
}

inline Integer pow(const Integer& base, unsigned long exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
    return out;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer out;
    mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

inline Integer isqrt(const Integer& v) {
    if (v < 0) throw std::domain_error("isqrt of negative value");
    Integer out;
    mpz_sqrt(out.get_mpz_t(), v.get_mpz_t());
    return out;
}

inline bool is_square(const Integer& v) {
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

inline Integer powmod(const Integer& base, const Integer& exponent, const Integer& modulus) {
    Integer out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return out;
}

struct ExtendedGcd {
    Integer g;  // gcd(a, b) >= 0
    Integer x;  // a*x + b*y == g
    Integer y;
};

/// Iterative extended Euclidean algorithm.
inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer quot;
        mpz_fdiv_q(quot.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
        Integer tmp = old_r - quot * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - quot * s;
        old_s = std::move(s);
        s = std::move(tmp);
        tmp = old_t - quot * t;
        old_t = std::move(t);
        t = std::move(tmp);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Inverse of a modulo m in [0, m), or nullopt when gcd(a, m) != 1.
inline std::optional<Integer> mod_inverse(const Integer& a, const Integer& m) {
    if (m <= 1) return std::nullopt;
    auto eg = extended_gcd(a, m);
    if (eg.g != 1) return std::nullopt;
    Integer inv = eg.x % m;
    if (inv < 0) inv += m;
    return inv;
}

/// If v == r^k for some k >= 2 (v > 1), returns the smallest such root r.
inline std::optional<std::pair<Integer, unsigned long>> perfect_power_root(const Integer& v) {
    if (v <= 3 || mpz_perfect_power_p(v.get_mpz_t()) == 0) return std::nullopt;
    const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
    // the largest exponent gives the smallest root
    for (unsigned long k = bits; k >= 2; --k) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), k) != 0 && root > 1) return std::pair{root, k};
    }
    return std::nullopt;
}

/// Uniform integer with exactly `bits` significant bits (top bit set).
template <class Rng>
Integer random_bits(Rng& rng, std::size_t bits) {
    if (bits == 0) return 0;
    Integer out = 0;
    std::size_t produced = 0;
    while (produced < bits) {
        out <<= 32;
        out += static_cast<unsigned long>(static_cast<std::uint32_t>(rng()));
        produced += 32;
    }
    out >>= (produced - bits);
    mpz_setbit(out.get_mpz_t(), bits - 1);
    return out;
}

/// Uniform integer in [lo, hi].
template <class Rng>
Integer random_range(Rng& rng, const Integer& lo, const Integer& hi) {
    if (hi < lo) throw std::invalid_argument("random_range: empty interval");
    const Integer span = hi - lo + 1;
    const std::size_t bits = mpz_sizeinbase(span.get_mpz_t(), 2);
    for (;;) {
        Integer r = 0;
        std::size_t produced = 0;
        while (produced < bits) {
            r <<= 32;
            r += static_cast<unsigned long>(static_cast<std::uint32_t>(rng()));
            produced += 32;
        }
        r >>= (produced - bits);
        if (r < span) return lo + r;
    }
}

}  // namespace hypercf
