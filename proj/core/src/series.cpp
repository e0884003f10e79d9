#include "charp/series.hpp"

namespace charp {

QSeries exp_truncated(const QSeries& f) {
    const auto& ctx = f.context();
    if (!(f.constant_term() == Rational(0)))
        throw NonComposable("exp_truncated: nonzero constant term");

    // every monomial must progress against some active cap, else the sum
    // never terminates under this truncation
    long budget = 1;
    if (ctx->trunc.weighted_cap) budget += *ctx->trunc.weighted_cap;
    if (ctx->trunc.degree_cap) budget += *ctx->trunc.degree_cap;
    for (long c : ctx->trunc.var_caps)
        if (c >= 0) budget += c;
    for (const auto& [e, c] : f.terms()) {
        bool progress = false;
        if (ctx->trunc.weighted_cap && ctx->weighted_degree(e) >= 1) progress = true;
        if (ctx->trunc.degree_cap && ctx->positive_degree(e) >= 1) progress = true;
        if (!ctx->trunc.var_caps.empty())
            for (size_t i = 0; i < e.size(); ++i)
                if (ctx->trunc.var_caps[i] >= 0 && e[i] >= 1) progress = true;
        if (!progress)
            throw NonComposable("exp_truncated: monomial escapes every truncation cap");
    }

    QSeries acc = QSeries::constant(ctx, Rational(1));
    QSeries power = acc;
    mpz_class nfact = 1;
    for (long n = 1; n <= budget; ++n) {
        power = power * f;
        if (power.is_zero()) break;
        nfact *= n;
        acc += power.scaled(Rational(mpz_class(1), nfact));
    }
    return acc;
}

ZqSeries reduce_mod_pk(const QSeries& f, long p, int k) {
    auto qctx = f.context();
    auto zctx = make_zq_context(qctx->names, qctx->weights, p, k, qctx->trunc);
    ZqSeries r(zctx);
    for (const auto& [e, c] : f.terms()) r.add_term(e, reduce_rational(c, p, k));
    return r;
}

ZqSeries reduce_series(const ZqSeries& f, int k2) {
    auto ctx = f.context();
    auto zctx = make_zq_context(ctx->names, ctx->weights, ctx->czero.p(), k2, ctx->trunc);
    ZqSeries r(zctx);
    for (const auto& [e, c] : f.terms()) r.add_term(e, c.reduce_to(k2));
    return r;
}

}  // namespace charp
