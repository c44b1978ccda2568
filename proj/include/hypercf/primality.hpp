#pragma once

#include "hypercf/bigint.hpp"

#include <array>
#include <cstdint>
#include <random>

namespace hypercf {

namespace detail {

inline constexpr std::array<unsigned long, 12> kFixedWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// One Miller-Rabin round: false means `n` is certainly composite.
inline bool miller_rabin_round(const Integer& n, const Integer& n_minus_1, const Integer& odd_part,
                               unsigned long twos, const Integer& witness) {
    Integer x = powmod(witness, odd_part, n);
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < twos; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace detail

/// Miller-Rabin with the first twelve prime bases (deterministic below 3.18e23),
/// followed by `extra_rounds` witnesses drawn from a generator seeded with `seed`.
inline bool is_probable_prime(const Integer& n, unsigned extra_rounds = 8, std::uint64_t seed = 0x5eedULL) {
    if (n < 2) return false;
    for (unsigned long p : detail::kFixedWitnesses) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
    }
    const Integer n_minus_1 = n - 1;
    Integer odd_part = n_minus_1;
    unsigned long twos = mpz_scan1(odd_part.get_mpz_t(), 0);
    odd_part >>= twos;

    for (unsigned long p : detail::kFixedWitnesses) {
        if (!detail::miller_rabin_round(n, n_minus_1, odd_part, twos, Integer(p))) return false;
    }
    static const Integer kDeterministicLimit("318665857834031151167461");
    if (n < kDeterministicLimit) return true;

    std::mt19937_64 rng(seed);
    for (unsigned i = 0; i < extra_rounds; ++i) {
        Integer a = random_range(rng, Integer(2), n - 2);
        if (!detail::miller_rabin_round(n, n_minus_1, odd_part, twos, a)) return false;
    }
    return true;
}

/// Random prime with exactly `bits` bits (rejection sampling over odd candidates).
template <class Rng>
Integer random_prime(Rng& rng, std::size_t bits) {
    if (bits < 2) throw std::invalid_argument("random_prime: need at least 2 bits");
    if (bits == 2) return (rng() & 1U) ? Integer(3) : Integer(2);
    for (;;) {
        Integer c = random_bits(rng, bits);
        mpz_setbit(c.get_mpz_t(), 0);
        if (is_probable_prime(c)) return c;
    }
}

}  // namespace hypercf
