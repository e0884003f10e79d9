#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <string>

#include "charp/error.hpp"

namespace charp {

/*
 * Exact rational coefficient. Canonical form is kept by GMP: gcd(num,den)=1,
 * den > 0, zero is 0/1. p-adic valuation queries are the extra surface the
 * series and Witt layers need; v_p(0) is reported as "infinite" (nullopt).
 */
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}
    Rational(long n, long d) : q_(n, d) { canon(); }
    explicit Rational(const mpz_class& z) : q_(z) {}
    Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) { canon(); }
    explicit Rational(const mpq_class& q) : q_(q) { canon(); }
    explicit Rational(const std::string& s) : q_(s) { canon(); }

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }

    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    void canon() { q_.canonicalize(); }
    mpq_class q_;
};

/* v_p(x); nullopt encodes +infinity (x = 0) */
std::optional<long> valuation_p(const Rational& x, long p);

/* x / p^e, throwing NotDivisible when v_p(x) < e */
Rational exact_div_p(const Rational& x, long e, long p);

inline bool is_p_integral(const Rational& x, long p) {
    auto v = valuation_p(x, p);
    return !v.has_value() || *v >= 0;
}

mpz_class pow_z(long base, unsigned long e);
mpz_class factorial_z(unsigned long n);

}  // namespace charp
