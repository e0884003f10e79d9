#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "charp/error.hpp"
#include "charp/rational.hpp"

namespace charp {

/*
 * Residue in Z/p^k (p prime, k >= 1). Small: the library never needs p^k
 * beyond 125, so plain 64-bit arithmetic suffices.
 */
class Zq {
public:
    Zq() : p_(0), k_(0), q_(1), v_(0) {}
    Zq(long p, int k, long v) : p_(p), k_(k), q_(1) {
        if (p < 2 || k < 1) throw Error("Zq: need p >= 2, k >= 1");
        for (int i = 0; i < k; ++i) q_ *= p;
        v_ = ((v % q_) + q_) % q_;
    }

    long p() const { return p_; }
    int k() const { return k_; }
    long modulus() const { return q_; }
    long value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Zq operator-() const { return with(q_ - v_); }
    friend Zq operator+(const Zq& a, const Zq& b) { a.match(b); return a.with(a.v_ + b.v_); }
    friend Zq operator-(const Zq& a, const Zq& b) { a.match(b); return a.with(a.v_ - b.v_ + a.q_); }
    friend Zq operator*(const Zq& a, const Zq& b) { a.match(b); return a.with(a.v_ * b.v_); }
    Zq& operator+=(const Zq& o) { *this = *this + o; return *this; }
    Zq& operator-=(const Zq& o) { *this = *this - o; return *this; }
    Zq& operator*=(const Zq& o) { *this = *this * o; return *this; }
    friend bool operator==(const Zq& a, const Zq& b) {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.v_ == b.v_;
    }

    Zq pow(unsigned long e) const {
        Zq r = with(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    /* inverse of a unit (value coprime to p) */
    Zq inv() const;

    /* v/p^e in Z/p^(k-e); throws NotDivisible */
    Zq exact_div_p(int e) const;

    /* reduction Z/p^k -> Z/p^k' for k' <= k */
    Zq reduce_to(int k2) const;

    std::string str() const { return std::to_string(v_); }

private:
    Zq with(long v) const {
        Zq r;
        r.p_ = p_; r.k_ = k_; r.q_ = q_;
        r.v_ = ((v % q_) + q_) % q_;
        return r;
    }
    void match(const Zq& o) const {
        if (p_ != o.p_ || k_ != o.k_)
            throw RingMismatch("Zq: mixed moduli " + std::to_string(q_) + " vs " +
                               std::to_string(o.q_));
    }
    long p_;
    int k_;
    long q_;
    long v_;
};

inline Zq Zq::inv() const {
    if (v_ % p_ == 0) throw Error("Zq::inv: not a unit: " + str());
    // extended Euclid on (v, q)
    long a = v_, b = q_, x0 = 1, x1 = 0;
    while (b) {
        long t = a / b;
        long tmp = a - t * b; a = b; b = tmp;
        tmp = x0 - t * x1; x0 = x1; x1 = tmp;
    }
    return with(x0);
}

inline Zq Zq::exact_div_p(int e) const {
    if (e < 0 || e >= k_) throw Error("Zq::exact_div_p: bad exponent");
    long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p_;
    if (v_ % pe != 0)
        throw NotDivisible("Zq::exact_div_p: " + str() + " not divisible by p^" +
                           std::to_string(e));
    return Zq(p_, k_ - e, v_ / pe);
}

inline Zq Zq::reduce_to(int k2) const {
    if (k2 < 1 || k2 > k_) throw Error("Zq::reduce_to: bad target exponent");
    return Zq(p_, k2, v_);
}

/* reduction of a p-integral rational into Z/p^k */
inline Zq reduce_rational(const Rational& x, long p, int k) {
    if (!is_p_integral(x, p))
        throw NotDivisible("reduce_rational: " + x.str() + " is not " +
                           std::to_string(p) + "-integral");
    mpz_class q = pow_z(p, static_cast<unsigned long>(k));
    mpz_class n = x.num() % q, d = x.den() % q;
    if (n < 0) n += q;
    if (d < 0) d += q;
    Zq num(p, k, n.get_si());
    Zq den(p, k, d.get_si());
    return num * den.inv();
}

std::ostream& operator<<(std::ostream& os, const Zq& z);

}  // namespace charp
