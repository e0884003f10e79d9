#include "charp/fgl.hpp"

namespace charp {

static Truncation capped(size_t nvars, long degree_cap, long lambda_cap, int lambda_index) {
    Truncation t;
    t.degree_cap = degree_cap;
    if (lambda_index >= 0) {
        t.var_caps.assign(nvars, -1);
        t.var_caps[lambda_index] = lambda_cap;
    }
    return t;
}

Ctx<Rational> fgl_context(long degree_cap, long lambda_cap) {
    if (lambda_cap < 0) return make_q_context({"v", "w"}, {1, 1}, capped(2, degree_cap, 0, -1));
    return make_q_context({"v", "w", "lam"}, {1, 1, -1}, capped(3, degree_cap, lambda_cap, 2));
}

Ctx<Rational> morphism_context(long degree_cap, long lambda_cap) {
    if (lambda_cap < 0) return make_q_context({"u"}, {1}, capped(1, degree_cap, 0, -1));
    return make_q_context({"u", "lam"}, {1, -1}, capped(2, degree_cap, lambda_cap, 1));
}

static bool has_lam(const Ctx<Rational>& c) { return c->index_of("lam") >= 0; }

static long lam_cap_of(const Ctx<Rational>& c) {
    int i = c->index_of("lam");
    if (i < 0 || c->trunc.var_caps.empty()) return -1;
    return c->trunc.var_caps[i];
}

bool equal_mod(const QSeries& a, const QSeries& b, long mod_p) {
    QSeries d = a - b;
    if (mod_p == 0) return d.is_zero();
    for (const auto& [e, c] : d.terms()) {
        auto v = valuation_p(c, mod_p);
        if (v.has_value() && *v < 1) return false;
    }
    return true;
}

QSeries restrict_lambda(const QSeries& f, long max_exp) {
    int li = f.context()->index_of("lam");
    if (li < 0) return f;
    QSeries r(f.context());
    for (const auto& [e, c] : f.terms())
        if (e[li] <= max_exp) r.add_term(e, c);
    return r;
}

QSeries divide_by_lambda(const QSeries& f) {
    int li = f.context()->index_of("lam");
    if (li < 0) throw Error("divide_by_lambda: no lam variable");
    QSeries r(f.context());
    for (const auto& [e, c] : f.terms()) {
        if (e[li] < 1) throw Error("divide_by_lambda: term without lam factor");
        Exponents e2 = e;
        e2[li] -= 1;
        r.add_term(e2, c);
    }
    return r;
}

bool validate_fgl(const FormalGroupLaw& F, long mod_p) {
    const auto& ctx = F.law.context();
    bool lam = has_lam(ctx);
    long D = ctx->trunc.degree_cap.value_or(8);
    long L = lam_cap_of(ctx);

    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    auto zero = QSeries::zero(ctx);

    // unit: F(v, 0) = v and F(0, w) = w
    if (!equal_mod(substitute(F.law, {{"v", v}, {"w", zero}}, ctx), v, mod_p)) return false;
    if (!equal_mod(substitute(F.law, {{"v", zero}, {"w", w}}, ctx), w, mod_p)) return false;

    // commutativity
    if (!equal_mod(substitute(F.law, {{"v", w}, {"w", v}}, ctx), F.law, mod_p)) return false;

    // associativity in three variables
    Ctx<Rational> c3;
    if (lam)
        c3 = make_q_context({"u", "v", "w", "lam"}, {1, 1, 1, -1}, capped(4, D, L, 3));
    else
        c3 = make_q_context({"u", "v", "w"}, {1, 1, 1}, capped(3, D, 0, -1));
    auto u3 = QSeries::variable(c3, "u");
    auto v3 = QSeries::variable(c3, "v");
    auto w3 = QSeries::variable(c3, "w");
    QSeries Fuv = substitute(F.law, {{"v", u3}, {"w", v3}}, c3);
    QSeries Fvw = substitute(F.law, {{"v", v3}, {"w", w3}}, c3);
    QSeries left = substitute(F.law, {{"v", Fuv}, {"w", w3}}, c3);
    QSeries right = substitute(F.law, {{"v", u3}, {"w", Fvw}}, c3);
    return equal_mod(left, right, mod_p);
}

FormalGroupLaw g_lambda(long degree_cap, long lambda_cap) {
    auto ctx = fgl_context(degree_cap, lambda_cap);
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    auto lam = QSeries::variable(ctx, "lam");
    return FormalGroupLaw{v + w + lam * v * w};
}

FormalGroupLaw additive_law(long degree_cap) {
    auto ctx = fgl_context(degree_cap, -1);
    return FormalGroupLaw{QSeries::variable(ctx, "v") + QSeries::variable(ctx, "w")};
}

FormalGroupLaw specialize_lambda(const FormalGroupLaw& F, long value, long degree_cap) {
    auto tgt = fgl_context(degree_cap, -1);
    auto v = QSeries::variable(tgt, "v");
    auto w = QSeries::variable(tgt, "w");
    auto c = QSeries::constant(tgt, Rational(value));
    return FormalGroupLaw{substitute(F.law, {{"v", v}, {"w", w}, {"lam", c}}, tgt)};
}

SeriesMorphism truncated_exponential(long p, long degree_cap, long lambda_cap) {
    auto ctx = morphism_context(degree_cap, lambda_cap);
    QSeries acc = QSeries::zero(ctx);
    mpz_class nfact = 1;
    for (long n = 1; n <= p - 1; ++n) {
        nfact *= n;
        Exponents e(2, 0);
        e[0] = static_cast<int>(n);
        e[1] = static_cast<int>(n - 1);
        acc.add_term(e, Rational(mpz_class(1), nfact));
    }
    return SeriesMorphism(acc);
}

bool is_homomorphism(const SeriesMorphism& phi, const FormalGroupLaw& F,
                     const FormalGroupLaw& G, long lambda_modulus, long degree) {
    Truncation t;
    t.degree_cap = degree;
    t.var_caps = {-1, -1, lambda_modulus - 1};
    auto ctx = make_q_context({"u", "v", "lam"}, {1, 1, -1}, t);
    auto u = QSeries::variable(ctx, "u");
    auto v = QSeries::variable(ctx, "v");

    QSeries Fuv = substitute(F.law, {{"v", u}, {"w", v}}, ctx);
    QSeries lhs = substitute(phi.series, {{"u", Fuv}}, ctx);
    QSeries phi_u = substitute(phi.series, {{"u", u}}, ctx);
    QSeries phi_v = substitute(phi.series, {{"u", v}}, ctx);
    QSeries rhs = substitute(G.law, {{"v", phi_u}, {"w", phi_v}}, ctx);
    return lhs == rhs;
}

QSeries artin_hasse(long p, long degree) {
    if (degree < 1) throw Error("artin_hasse: degree >= 1 required");
    Truncation t;
    t.degree_cap = degree;
    auto ctx = make_q_context({"T"}, {1}, t);
    QSeries arg = QSeries::zero(ctx);
    mpz_class pr = 1;
    for (long e = 1; e <= degree; e *= p) {
        arg.add_term({static_cast<int>(e)}, Rational(mpz_class(1), pr));
        pr *= p;
    }
    return exp_truncated(arg);
}

int psi_effective_m(long p, long d_lambda) {
    int m = 0;
    long pe = p;
    while (pe <= d_lambda) {
        ++m;
        pe *= p;
    }
    return m;
}

static Ctx<Rational> psi_context(long p, int m, long d_t, long d_lambda) {
    std::vector<std::string> names;
    std::vector<int> weights;
    long w = 1;
    for (int j = 0; j <= m; ++j) {
        names.push_back("T" + std::to_string(j));
        weights.push_back(static_cast<int>(w));
        w *= p;
    }
    names.push_back("lam");
    weights.push_back(-1);
    Truncation t;
    t.degree_cap = d_t;
    t.var_caps.assign(names.size(), -1);
    t.var_caps.back() = d_lambda;  // product precision; Psi itself uses < d_lambda
    return make_q_context(std::move(names), std::move(weights), std::move(t));
}

static QSeries psi_in(Ctx<Rational> ctx, long p, int m, long d_lambda) {
    auto one = QSeries::constant(ctx, Rational(1));
    QSeries prod = one;
    int lam_index = ctx->index_of("lam");
    for (int j = 0; j <= m; ++j) {
        // arg_j = sum_r (lam^{p^j} T_j)^{p^r} / p^r
        QSeries arg = QSeries::zero(ctx);
        long pj = 1;
        for (int r = 0; r < j; ++r) pj *= p;
        mpz_class pr = 1;
        for (long e = 1;; e *= p) {
            long lam_exp = pj * e;
            if (lam_exp > d_lambda) break;
            Exponents ex(ctx->names.size(), 0);
            ex[j] = static_cast<int>(e);
            ex[lam_index] = static_cast<int>(lam_exp);
            arg.add_term(ex, Rational(mpz_class(1), pr));
            pr *= p;
        }
        prod = prod * exp_truncated(arg);
    }
    return divide_by_lambda(prod - one);
}

QSeries psi_series(long p, int m, long d_t, long d_lambda) {
    if (m < 0 || d_lambda < 1 || d_t < 1) throw Error("psi_series: bad parameters");
    int meff = psi_effective_m(p, d_lambda);
    if (m > meff)
        throw Error("psi_series: coordinate T" + std::to_string(m) +
                    " cannot contribute mod lam^" + std::to_string(d_lambda) +
                    " (effective bound m = " + std::to_string(meff) + ")");
    return psi_in(psi_context(p, m, d_t, d_lambda), p, m, d_lambda);
}

bool psi_homomorphism_check(long p, int m, long d_t, long d_lambda) {
    const int n = m + 1;  // Witt coordinate count of the inputs
    const int meff = std::min(m, psi_effective_m(p, d_lambda));
    auto sys = build_witt_system(p, n);

    // clause (a): Psi(S(X,Y)) == G_lam(Psi(X), Psi(Y))
    {
        std::vector<std::string> names;
        std::vector<int> weights;
        long w = 1;
        for (int j = 0; j < n; ++j) {
            names.push_back("X" + std::to_string(j));
            weights.push_back(static_cast<int>(w));
            w *= p;
        }
        w = 1;
        for (int j = 0; j < n; ++j) {
            names.push_back("Y" + std::to_string(j));
            weights.push_back(static_cast<int>(w));
            w *= p;
        }
        names.push_back("lam");
        weights.push_back(-1);
        Truncation t;
        t.degree_cap = d_t;
        t.var_caps.assign(names.size(), -1);
        t.var_caps.back() = d_lambda;
        auto ctx = make_q_context(names, weights, t);

        QSeries psi = psi_series(p, meff, d_t, d_lambda);
        auto bind_coords = [&](const std::string& stem) {
            std::map<std::string, QSeries> b;
            for (int j = 0; j <= meff; ++j)
                b["T" + std::to_string(j)] =
                    QSeries::variable(ctx, stem + std::to_string(j));
            return b;
        };
        QSeries psi_x = substitute(psi, bind_coords("X"), ctx);
        QSeries psi_y = substitute(psi, bind_coords("Y"), ctx);

        std::map<std::string, QSeries> bind_sum;
        for (int j = 0; j <= meff; ++j)
            bind_sum["T" + std::to_string(j)] = substitute(
                sys->sum_polys[j], std::map<std::string, QSeries>{}, ctx);
        QSeries lhs = substitute(psi, bind_sum, ctx);
        QSeries lam = QSeries::variable(ctx, "lam");
        QSeries rhs = psi_x + psi_y + lam * psi_x * psi_y;
        if (restrict_lambda(lhs, d_lambda - 1) != restrict_lambda(rhs, d_lambda - 1))
            return false;
    }

    // clause (b): Psi(V(T)) == Psi([lam^{p-1}] T), the latter via product polys
    {
        auto ctx = psi_context(p, m, d_t, d_lambda);
        QSeries psi = psi_in(ctx, p, meff, d_lambda);
        auto zero = QSeries::zero(ctx);

        std::map<std::string, QSeries> bind_v;
        for (int j = 0; j <= meff; ++j)
            bind_v["T" + std::to_string(j)] =
                j == 0 ? zero : QSeries::variable(ctx, "T" + std::to_string(j - 1));
        QSeries lhs = substitute(psi, bind_v, ctx);

        // [lam^{p-1}] T via P_i(X = (lam^{p-1},0,..), Y = T)
        int lam_index = ctx->index_of("lam");
        Exponents le(ctx->names.size(), 0);
        le[lam_index] = static_cast<int>(p - 1);
        QSeries lam_teich = QSeries::monomial(ctx, le, Rational(1));
        std::map<std::string, QSeries> bind_mul;
        for (int j = 0; j < n; ++j) {
            std::map<std::string, QSeries> b;
            for (int i = 0; i < n; ++i) {
                b["X" + std::to_string(i)] = i == 0 ? lam_teich : zero;
                b["Y" + std::to_string(i)] = QSeries::variable(ctx, "T" + std::to_string(i));
            }
            if (j <= meff)
                bind_mul["T" + std::to_string(j)] = substitute(sys->product_polys[j], b, ctx);
        }
        QSeries rhs = substitute(psi, bind_mul, ctx);
        if (restrict_lambda(lhs, d_lambda - 1) != restrict_lambda(rhs, d_lambda - 1))
            return false;
    }
    return true;
}

FormalGroupLaw height_h_law(long p, int h) {
    if (h < 1) throw Error("height_h_law: h >= 1 required");
    long ph = 1;
    for (int i = 0; i < h; ++i) ph *= p;
    auto ctx = fgl_context(ph, -1);
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    QSeries num = v.pow(ph) + w.pow(ph) - (v + w).pow(ph);
    return FormalGroupLaw{v + w + series_exact_div_p(num, 1, p)};
}

FormalGroupLaw height_h_rescaled(long p, int h) {
    long ph = 1;
    for (int i = 0; i < h; ++i) ph *= p;
    FormalGroupLaw F = height_h_law(p, h);
    auto ctx = fgl_context(ph, ph);
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    auto lam = QSeries::variable(ctx, "lam");
    QSeries scaled = substitute(F.law, {{"v", lam * v}, {"w", lam * w}}, ctx);
    return FormalGroupLaw{divide_by_lambda(scaled)};
}

}  // namespace charp
