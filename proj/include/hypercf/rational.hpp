#pragma once

/**
 * Exact rational numbers over arbitrary-precision integers.
 *
 * Values are always stored reduced: den > 0 and gcd(|num|, den) == 1, so
 * zero is uniquely 0/1 and structural equality is numeric equality.
 */

#include "hypercf/bigint.hpp"

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hypercf {

class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(Integer value) : num_(std::move(value)), den_(1) {}  // NOLINT: implicit by intent
    Rational(long value) : num_(value), den_(1) {}                 // NOLINT
    Rational(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const Integer& num() const { return num_; }
    const Integer& den() const { return den_; }

    int sign() const { return sgn(num_); }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rational operator-() const { return from_reduced(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("undefined rational");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(Integer(a.num_ * b.den_), Integer(b.num_ * a.den_));
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational abs() const { return from_reduced(::abs(num_), den_); }
    Rational reciprocal() const { return Rational(den_, num_); }

    /// floor(num / den)
    Integer floor() const {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        return q;
    }

    std::string str() const {
        return den_ == 1 ? num_.get_str() : num_.get_str() + "/" + den_.get_str();
    }

    double to_double() const { return mpq_class(num_, den_).get_d(); }

private:
    static Rational from_reduced(Integer num, Integer den) {
        Rational r;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        return r;
    }

    void normalize() {
        if (den_ == 0) throw std::domain_error("undefined rational");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        Integer g = gcd(num_, den_);
        if (g != 1) {
            mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
            mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
        }
    }

    Integer num_;
    Integer den_;
};

/// Reduced fraction num/den; throws std::domain_error("undefined rational") when den == 0.
inline Rational make_rational(Integer num, Integer den) { return Rational(std::move(num), std::move(den)); }

inline Rational rat_add(const Rational& a, const Rational& b) { return a + b; }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace hypercf
