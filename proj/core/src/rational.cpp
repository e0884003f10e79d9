#include "charp/rational.hpp"

#include <ostream>

namespace charp {

Rational& Rational::operator/=(const Rational& o) {
    if (o.q_ == 0) throw Error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

std::string Rational::str() const {
    return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.q_;
}

static long valuation_z(const mpz_class& z, long p) {
    // caller guarantees z != 0
    long v = 0;
    mpz_class a = z, q, r;
    mpz_class P(p);
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t());
        if (r != 0) return v;
        a = q;
        ++v;
    }
}

std::optional<long> valuation_p(const Rational& x, long p) {
    if (p < 2) throw Error("valuation_p: p must be >= 2");
    if (x.is_zero()) return std::nullopt;
    long vn = valuation_z(x.num(), p);
    long vd = valuation_z(x.den(), p);
    return vn - vd;
}

Rational exact_div_p(const Rational& x, long e, long p) {
    if (e < 0) throw Error("exact_div_p: negative exponent");
    if (e == 0 || x.is_zero()) return x;
    auto v = valuation_p(x, p);
    if (v.has_value() && *v < e)
        throw NotDivisible("exact_div_p: v_" + std::to_string(p) + "(" + x.str() +
                           ") < " + std::to_string(e));
    mpz_class pe = pow_z(p, static_cast<unsigned long>(e));
    return x / Rational(pe);
}

mpz_class pow_z(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

mpz_class factorial_z(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

}  // namespace charp
