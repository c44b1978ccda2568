#pragma once

// Finite continued fractions of rationals and their convergents.
//
//   x = [a0, a1, ..., an] = a0 + 1/(a1 + 1/(... + 1/an))
//
// Expansion is the Euclidean algorithm on (num, den) with floor division, so
// a_k >= 1 for k >= 1 and the last term is >= 2 whenever n >= 1 (canonical form).

#include "hypercf/bigint.hpp"
#include "hypercf/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hypercf {

using PartialQuotients = std::vector<Integer>;

struct Convergent {
    Integer p;  // numerator p_k
    Integer q;  // denominator q_k > 0
    std::size_t index = 0;

    Rational value() const { return Rational(p, q); }
    friend bool operator==(const Convergent&, const Convergent&) = default;
};

/// Lazily yields the partial quotients of a rational, one Euclid step at a time.
class PartialQuotientStream {
public:
    explicit PartialQuotientStream(const Rational& r) : num_(r.num()), den_(r.den()) {}

    std::optional<Integer> next() {
        if (den_ == 0) return std::nullopt;
        Integer a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        num_ = std::move(den_);
        den_ = std::move(rem);
        return a;
    }

private:
    Integer num_;
    Integer den_;
};

/// Convergents p_k/q_k of a rational, produced on demand via
///   p_k = a_k p_{k-1} + p_{k-2},  q_k = a_k q_{k-1} + q_{k-2}
/// seeded with p_{-2} = q_{-1} = 0, p_{-1} = q_{-2} = 1.
class ConvergentStream {
public:
    explicit ConvergentStream(const Rational& r) : terms_(r) {}

    std::optional<Convergent> next() {
        auto a = terms_.next();
        if (!a) return std::nullopt;
        Integer p = *a * p1_ + p2_;
        Integer q = *a * q1_ + q2_;
        p2_ = std::move(p1_);
        q2_ = std::move(q1_);
        p1_ = p;
        q1_ = q;
        return Convergent{std::move(p), std::move(q), index_++};
    }

private:
    PartialQuotientStream terms_;
    Integer p2_ = 0, p1_ = 1;  // p_{k-2}, p_{k-1}
    Integer q2_ = 1, q1_ = 0;  // q_{k-2}, q_{k-1}
    std::size_t index_ = 0;
};

inline PartialQuotients cf_expand(const Rational& r) {
    PartialQuotients out;
    PartialQuotientStream s(r);
    for (auto a = s.next(); a; a = s.next()) out.push_back(std::move(*a));
    return out;
}

inline std::vector<Convergent> convergents(const PartialQuotients& terms) {
    if (terms.empty()) throw std::invalid_argument("convergents: empty partial quotient list");
    std::vector<Convergent> out;
    out.reserve(terms.size());
    Integer p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        Integer p = terms[k] * p1 + p2;
        Integer q = terms[k] * q1 + q2;
        p2 = std::move(p1);
        q2 = std::move(q1);
        p1 = p;
        q1 = q;
        out.push_back({std::move(p), std::move(q), k});
    }
    return out;
}

inline std::vector<Convergent> convergents(const Rational& r) { return convergents(cf_expand(r)); }

/// True iff the terms are a canonical finite expansion (a_k >= 1 for k >= 1, last >= 2 if n >= 1).
inline bool is_canonical(const PartialQuotients& terms) {
    if (terms.empty()) return false;
    for (std::size_t k = 1; k < terms.size(); ++k)
        if (terms[k] < 1) return false;
    return terms.size() == 1 || terms.back() >= 2;
}

}  // namespace hypercf
