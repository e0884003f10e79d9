#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "charp/error.hpp"
#include "charp/rational.hpp"
#include "charp/zq.hpp"

namespace charp {

/*
 * Truncation data for a weighted series ring:
 *   - weighted_cap: sum of e_i * weight_i over all variables,
 *   - degree_cap:   plain total degree over the positive-weight variables,
 *   - var_caps:     per-variable exponent caps (-1 = unbounded).
 * The lambda-direction cap and the series-degree cap are independent knobs:
 * the deforming variable is capped per-variable while the series variables
 * are capped by degree.
 */
struct Truncation {
    std::optional<long> weighted_cap;
    std::optional<long> degree_cap;
    std::vector<long> var_caps;  // aligned with context variables; -1 unbounded

    bool operator==(const Truncation&) const = default;
};

using Exponents = std::vector<int>;

struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        long da = std::accumulate(a.begin(), a.end(), 0L);
        long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da < db;
        return a < b;
    }
};

template <class C>
struct SeriesContext {
    std::vector<std::string> names;
    std::vector<int> weights;
    Truncation trunc;
    C czero;
    C cone;

    bool operator==(const SeriesContext&) const = default;

    int index_of(const std::string& name) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        return -1;
    }

    long weighted_degree(const Exponents& e) const {
        long d = 0;
        for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * weights[i];
        return d;
    }
    long positive_degree(const Exponents& e) const {
        long d = 0;
        for (size_t i = 0; i < e.size(); ++i)
            if (weights[i] > 0) d += e[i];
        return d;
    }
    bool admissible(const Exponents& e) const {
        if (!trunc.var_caps.empty())
            for (size_t i = 0; i < e.size(); ++i)
                if (trunc.var_caps[i] >= 0 && e[i] > trunc.var_caps[i]) return false;
        if (trunc.degree_cap && positive_degree(e) > *trunc.degree_cap) return false;
        if (trunc.weighted_cap && weighted_degree(e) > *trunc.weighted_cap) return false;
        return true;
    }
};

template <class C>
using Ctx = std::shared_ptr<const SeriesContext<C>>;

template <class C>
Ctx<C> make_context(std::vector<std::string> names, std::vector<int> weights, Truncation trunc,
                    C zero, C one) {
    if (names.size() != weights.size())
        throw Error("make_context: names/weights size mismatch");
    if (!trunc.var_caps.empty() && trunc.var_caps.size() != names.size())
        throw Error("make_context: var_caps size mismatch");
    auto c = std::make_shared<SeriesContext<C>>();
    c->names = std::move(names);
    c->weights = std::move(weights);
    c->trunc = std::move(trunc);
    c->czero = std::move(zero);
    c->cone = std::move(one);
    return c;
}

inline Ctx<Rational> make_q_context(std::vector<std::string> names, std::vector<int> weights,
                                    Truncation trunc = {}) {
    return make_context<Rational>(std::move(names), std::move(weights), std::move(trunc),
                                  Rational(0), Rational(1));
}

inline Ctx<Zq> make_zq_context(std::vector<std::string> names, std::vector<int> weights,
                               long p, int k, Truncation trunc = {}) {
    return make_context<Zq>(std::move(names), std::move(weights), std::move(trunc),
                            Zq(p, k, 0), Zq(p, k, 1));
}

/* term-count guard: CHARP_MAX_TERMS overrides the default */
inline long series_max_terms() {
    static long cap = [] {
        if (const char* s = std::getenv("CHARP_MAX_TERMS")) {
            long v = std::atol(s);
            if (v > 0) return v;
        }
        return 2000000L;
    }();
    return cap;
}

/*
 * Truncated multivariate series with integer-weighted variables and sparse
 * exponent storage. Terms are kept in graded-lex order on the declared
 * variable order so serialized output is bit-stable; zero coefficients are
 * never stored; every operation re-truncates before returning. Immutable in
 * spirit: all operations return fresh values.
 */
template <class C>
class WeightedSeries {
public:
    using TermMap = std::map<Exponents, C, GrlexLess>;

    WeightedSeries() = default;
    explicit WeightedSeries(Ctx<C> ctx) : ctx_(std::move(ctx)) {}

    static WeightedSeries zero(Ctx<C> ctx) { return WeightedSeries(std::move(ctx)); }

    static WeightedSeries constant(Ctx<C> ctx, const C& c) {
        WeightedSeries s(ctx);
        s.add_term(Exponents(ctx->names.size(), 0), c);
        return s;
    }

    static WeightedSeries variable(Ctx<C> ctx, const std::string& name) {
        int i = ctx->index_of(name);
        if (i < 0) throw IncompatibleRings("variable: unknown name " + name);
        Exponents e(ctx->names.size(), 0);
        e[i] = 1;
        WeightedSeries s(ctx);
        s.add_term(e, ctx->cone);
        return s;
    }

    static WeightedSeries monomial(Ctx<C> ctx, Exponents e, const C& c) {
        if (e.size() != ctx->names.size()) throw Error("monomial: exponent arity");
        WeightedSeries s(ctx);
        s.add_term(std::move(e), c);
        return s;
    }

    const Ctx<C>& context() const { return ctx_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    C coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? ctx_->czero : it->second;
    }
    C constant_term() const { return coefficient(Exponents(ctx_->names.size(), 0)); }

    /* coefficient of the degree-one monomial in variable i */
    C linear_coefficient(int i) const {
        Exponents e(ctx_->names.size(), 0);
        e[i] = 1;
        return coefficient(e);
    }

    WeightedSeries operator-() const {
        WeightedSeries r(ctx_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend WeightedSeries operator+(const WeightedSeries& a, const WeightedSeries& b) {
        a.check_ctx(b);
        WeightedSeries r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend WeightedSeries operator-(const WeightedSeries& a, const WeightedSeries& b) {
        a.check_ctx(b);
        WeightedSeries r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend WeightedSeries operator*(const WeightedSeries& a, const WeightedSeries& b) {
        a.check_ctx(b);
        WeightedSeries r(a.ctx_);
        const size_t nv = a.ctx_->names.size();
        Exponents e(nv, 0);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < nv; ++i) e[i] = ea[i] + eb[i];
                if (!a.ctx_->admissible(e)) continue;
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    WeightedSeries& operator+=(const WeightedSeries& o) { return *this = *this + o; }
    WeightedSeries& operator-=(const WeightedSeries& o) { return *this = *this - o; }
    WeightedSeries& operator*=(const WeightedSeries& o) { return *this = *this * o; }

    WeightedSeries scaled(const C& c) const {
        WeightedSeries r(ctx_);
        for (const auto& [e, cf] : terms_) r.add_term(e, cf * c);
        return r;
    }

    WeightedSeries pow(unsigned long n) const {
        WeightedSeries r = constant(ctx_, ctx_->cone);
        WeightedSeries b = *this;
        while (n) {
            if (n & 1) r = r * b;
            if (n >>= 1) b = b * b;
        }
        return r;
    }

    friend bool operator==(const WeightedSeries& a, const WeightedSeries& b) {
        a.check_ctx(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const WeightedSeries& a, const WeightedSeries& b) { return !(a == b); }

    /* terms of plain total degree exactly one */
    WeightedSeries linear_part() const {
        WeightedSeries r(ctx_);
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0L) == 1) r.add_term(e, c);
        return r;
    }

    /* canonical text form: coeff * v1^e1 v2^e2 + ... in graded-lex order */
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << coeff_str(c);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                os << " * " << ctx_->names[i];
                if (e[i] != 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

    void add_term(const Exponents& e, const C& c) {
        if (!ctx_->admissible(e)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (!(c == ctx_->czero)) {
                terms_.emplace(e, c);
                if (static_cast<long>(terms_.size()) > series_max_terms())
                    throw Error("series term count exceeds CHARP_MAX_TERMS guard");
            }
        } else {
            it->second += c;
            if (it->second == ctx_->czero) terms_.erase(it);
        }
    }

private:
    static std::string coeff_str(const Rational& c) { return c.str(); }
    static std::string coeff_str(const Zq& c) { return c.str(); }

    void check_ctx(const WeightedSeries& o) const {
        if (!ctx_ || !o.ctx_) throw IncompatibleRings("series without context");
        if (ctx_ != o.ctx_ && !(*ctx_ == *o.ctx_))
            throw IncompatibleRings("series contexts differ");
    }

    Ctx<C> ctx_;
    TermMap terms_;
};

using QSeries = WeightedSeries<Rational>;
using ZqSeries = WeightedSeries<Zq>;

/*
 * Substitution f(x_1,...,x_n) -> f(g_1,...,g_n). Bound variables of positive
 * weight must be sent to series with zero constant term; unbound variables
 * must exist (same weight) in the target context. Bindings may live in a
 * different context than f; they must all share one.
 */
template <class C>
WeightedSeries<C> substitute(const WeightedSeries<C>& f,
                             const std::map<std::string, WeightedSeries<C>>& bindings,
                             Ctx<C> target = nullptr) {
    const auto& fctx = f.context();
    if (!target) {
        if (!bindings.empty())
            target = bindings.begin()->second.context();
        else
            target = fctx;
    }
    for (const auto& [name, g] : bindings) {
        if (!(g.context() == target) && !(*g.context() == *target))
            throw IncompatibleRings("substitute: bindings in mixed contexts");
        if (fctx->index_of(name) < 0)
            throw IncompatibleRings("substitute: binding for unknown variable " + name);
    }

    const size_t nv = fctx->names.size();
    std::vector<WeightedSeries<C>> base(nv);
    for (size_t i = 0; i < nv; ++i) {
        auto it = bindings.find(fctx->names[i]);
        if (it != bindings.end()) {
            base[i] = it->second;
            if (fctx->weights[i] > 0 && !(it->second.constant_term() == target->czero))
                throw NonComposable("substitute: nonzero constant term bound to " +
                                    fctx->names[i]);
        } else {
            int j = target->index_of(fctx->names[i]);
            if (j < 0)
                throw IncompatibleRings("substitute: unbound variable " + fctx->names[i] +
                                        " missing from target context");
            if (target->weights[j] != fctx->weights[i])
                throw IncompatibleRings("substitute: weight mismatch for " + fctx->names[i]);
            base[i] = WeightedSeries<C>::variable(target, fctx->names[i]);
        }
    }

    std::vector<std::vector<WeightedSeries<C>>> powers(nv);
    auto power = [&](size_t i, int e) -> const WeightedSeries<C>& {
        auto& tab = powers[i];
        if (tab.empty()) tab.push_back(WeightedSeries<C>::constant(target, target->cone));
        while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * base[i]);
        return tab[e];
    };

    WeightedSeries<C> acc = WeightedSeries<C>::zero(target);
    for (const auto& [e, c] : f.terms()) {
        WeightedSeries<C> t = WeightedSeries<C>::constant(target, c);
        for (size_t i = 0; i < nv; ++i)
            if (e[i] != 0) t = t * power(i, e[i]);
        acc += t;
    }
    return acc;
}

/*
 * exp(f) = sum f^n/n! under f's truncation. Needs rational coefficients and a
 * zero constant term, and every monomial of f must make progress against some
 * active cap so the sum terminates.
 */
QSeries exp_truncated(const QSeries& f);

/* the modular overload exists only to refuse: factorials are not invertible */
inline ZqSeries exp_truncated(const ZqSeries&) {
    throw InvalidCoefficientRing("exp_truncated needs rational coefficients");
}

inline bool is_p_integral(const QSeries& f, long p) {
    for (const auto& [e, c] : f.terms())
        if (!is_p_integral(c, p)) return false;
    return true;
}

/* all coefficients integers (denominator one) */
inline bool is_integral(const QSeries& f) {
    for (const auto& [e, c] : f.terms())
        if (!c.is_integer()) return false;
    return true;
}

/* divide every coefficient by p^e exactly; NotDivisible propagates */
inline QSeries series_exact_div_p(const QSeries& f, long e, long p) {
    QSeries r(f.context());
    for (const auto& [ex, c] : f.terms()) r.add_term(ex, exact_div_p(c, e, p));
    return r;
}

/* coefficient-wise reduction into Z/p^k over a parallel modular context */
ZqSeries reduce_mod_pk(const QSeries& f, long p, int k);
ZqSeries reduce_series(const ZqSeries& f, int k2);

}  // namespace charp
