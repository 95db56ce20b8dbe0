#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "tophier/error.hpp"

namespace tophier {

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
/// Wraps GMP's mpq_class so that every construction path canonicalizes.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(int n) : q_(n) {}
    Rat(long n) : q_(static_cast<signed long>(n)) {}
    Rat(long long n) : q_(mpz_class(std::to_string(n))) {}
    explicit Rat(const mpz_class& n) : q_(n) {}

    Rat(long num, long den) {
        if (den == 0) raise(ErrorKind::Precondition, "Rat: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    Rat(const mpz_class& num, const mpz_class& den) {
        if (den == 0) raise(ErrorKind::Precondition, "Rat: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p" or "p/q" with optional leading sign.
    static Rat parse(std::string_view text);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) raise(ErrorKind::Precondition, "Rat: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

    Rat pow(long e) const;
    Rat abs() const { return Rat(mpq_class(::abs(q_))); }
    Rat inverse() const;

    /// "p" when integral, "p/q" otherwise; minus sign on the numerator.
    std::string str() const;

private:
    mpq_class q_;
};

mpz_class factorial(long n);          // n < 0 is an error
mpz_class double_factorial(long n);   // (-1)!! = 1 by convention
mpz_class binomial(long n, long k);   // generalized: n may be negative
Rat rat_factorial_inv(long n);        // 1/n! for n >= 0, 0 for n < 0

}  // namespace tophier
