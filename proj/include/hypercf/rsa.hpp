#pragma once

// Toy RSA: seeded key generation, textbook encrypt/decrypt, and Wiener's
// small-private-exponent attack. Not a secure RSA implementation.

#include "hypercf/bigint.hpp"
#include "hypercf/continued_fraction.hpp"
#include "hypercf/primality.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

namespace hypercf::rsa {

inline constexpr unsigned kMinBits = 8;
inline constexpr unsigned kMaxBits = 128;

struct KeyPair {
    Natural p, q, n, e, d, phi;
    friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

struct PublicKey {
    Natural n, e;
};
struct PrivateKey {
    Natural n, d;
};

/// Throws std::logic_error if any key invariant is violated.
inline void check_invariants(const KeyPair& k) {
    auto fail = [](const char* what) { throw std::logic_error(std::string("invalid key pair: ") + what); };
    if (k.p == k.q) fail("p == q");
    if (!is_probable_prime(k.p) || !is_probable_prime(k.q)) fail("factor not prime");
    if (k.n != k.p * k.q) fail("n != p*q");
    if (k.phi != (k.p - 1) * (k.q - 1)) fail("phi mismatch");
    if (!(1 < k.e && k.e < k.phi)) fail("e out of range");
    if (gcd(k.e, k.phi) != 1) fail("gcd(e, phi) != 1");
    if (Integer(k.e * k.d % k.phi) != 1) fail("e*d != 1 mod phi");
}

/// 81 d^4 < n, i.e. d < n^(1/4) / 3.
inline bool below_wiener_bound(const Natural& d, const Natural& n) { return 81 * pow(d, 4) < n; }

/// Deterministic for a given (bits, seed, small_d). With small_d, d is drawn
/// below n^(1/4)/3 first and e = d^-1 mod phi.
inline KeyPair keygen(unsigned bits, std::uint64_t seed, bool small_d = false) {
    if (bits < kMinBits) throw std::invalid_argument("bit size too small to find two distinct primes");
    if (bits > kMaxBits) throw std::invalid_argument("toy harness is capped at 128-bit moduli");
    std::mt19937_64 rng(seed);
    const std::size_t pbits = bits / 2;
    const std::size_t qbits = bits - pbits;

    for (int attempt = 0; attempt < 10000; ++attempt) {
        Natural p = random_prime(rng, pbits);
        Natural q = random_prime(rng, qbits);
        if (p == q || p == 2 || q == 2) continue;
        if (q < p) std::swap(p, q);
        KeyPair k;
        k.p = p;
        k.q = q;
        k.n = p * q;
        k.phi = (p - 1) * (q - 1);

        if (small_d) {
            // largest d with 81 d^4 < n
            Natural limit;
            mpz_root(limit.get_mpz_t(), Integer(k.n / 81).get_mpz_t(), 4);
            while (limit > 0 && !below_wiener_bound(limit, k.n)) --limit;
            if (limit < 3) continue;
            bool found = false;
            for (int tries = 0; tries < 1000 && !found; ++tries) {
                Natural d = random_range(rng, Natural(3), limit);
                if (gcd(d, k.phi) != 1) continue;
                auto e = mod_inverse(d, k.phi);
                if (!e || *e <= 1) continue;
                k.d = d;
                k.e = *e;
                found = true;
            }
            if (!found) continue;
        } else {
            const Natural f4 = 65537;
            if (f4 < k.phi && gcd(f4, k.phi) == 1) {
                k.e = f4;
            } else {
                bool found = false;
                for (int tries = 0; tries < 1000 && !found; ++tries) {
                    Natural e = random_range(rng, Natural(3), k.phi - 1);
                    if (gcd(e, k.phi) == 1) {
                        k.e = e;
                        found = true;
                    }
                }
                if (!found) continue;
            }
            k.d = *mod_inverse(k.e, k.phi);
        }
        check_invariants(k);
        return k;
    }
    throw std::runtime_error("keygen: could not construct a key pair");
}

/// Key whose d lies near phi/2, far above the Wiener bound.
inline KeyPair keygen_large_d(unsigned bits, std::uint64_t seed) {
    KeyPair k = keygen(bits, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const Natural half = k.phi / 2;
    for (Natural d = half + random_range(rng, Natural(0), Natural(k.phi / 8));; ++d) {
        if (d >= k.phi) d = half;
        if (gcd(d, k.phi) != 1) continue;
        auto e = mod_inverse(d, k.phi);
        if (!e || *e <= 1) continue;
        k.d = d;
        k.e = *e;
        check_invariants(k);
        return k;
    }
}

inline Natural encrypt(const PublicKey& key, const Natural& m) {
    if (m < 0 || m >= key.n) throw std::invalid_argument("message out of range [0, n)");
    return powmod(m, key.e, key.n);
}

inline Natural decrypt(const PrivateKey& key, const Natural& c) {
    if (c < 0 || c >= key.n) throw std::invalid_argument("ciphertext out of range [0, n)");
    return powmod(c, key.d, key.n);
}

struct WienerResult {
    Natural d;
    Natural p, q;  // recovered factors, p <= q
    Natural phi;
};

/// Convergents k/d of e/n: accept when phi = (ed-1)/k is integral and
/// x^2 - (n - phi + 1)x + n has integer roots.
inline std::optional<WienerResult> wiener_attack_full(const Natural& n, const Natural& e) {
    if (n <= 0 || e <= 0) return std::nullopt;
    if (e == 1) return WienerResult{1, 0, 0, 0};
    ConvergentStream stream(Rational(e, n));
    for (auto c = stream.next(); c; c = stream.next()) {
        const Integer& k = c->p;
        const Integer& d = c->q;
        if (k < 1) continue;
        const Integer ed1 = e * d - 1;
        if (mpz_divisible_p(ed1.get_mpz_t(), k.get_mpz_t()) == 0) continue;
        const Integer phi = ed1 / k;
        const Integer s = n - phi + 1;
        const Integer disc = s * s - 4 * n;
        if (disc < 0 || !is_square(disc)) continue;
        const Integer r = isqrt(disc);
        if (mpz_odd_p(Integer(s + r).get_mpz_t())) continue;
        Integer p = (s - r) / 2, q = (s + r) / 2;
        if (p <= 1 || p * q != n) continue;
        return WienerResult{d, p, q, phi};
    }
    return std::nullopt;
}

inline std::optional<Natural> wiener_attack(const Natural& n, const Natural& e) {
    if (auto r = wiener_attack_full(n, e)) return r->d;
    return std::nullopt;
}

}  // namespace hypercf::rsa
