#include "charp/witt.hpp"

#include <map>
#include <mutex>

namespace charp {

int witt_length_cap(long p) {
    switch (p) {
        case 2: return 4;
        case 3: return 3;
        case 5: return 2;
        default: return 0;
    }
}

static std::vector<std::string> indexed_names(const std::string& stem, int count) {
    std::vector<std::string> v;
    for (int i = 0; i < count; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

static std::vector<int> witt_weights(long p, int count) {
    std::vector<int> w;
    long x = 1;
    for (int i = 0; i < count; ++i) {
        w.push_back(static_cast<int>(x));
        x *= p;
    }
    return w;
}

/* Phi_i over an arbitrary context whose slot j is vars[j] */
static QSeries ghost_in(Ctx<Rational> ctx, long p, int i, const std::vector<int>& vars) {
    QSeries acc = QSeries::zero(ctx);
    mpz_class pj = 1;
    for (int j = 0; j <= i; ++j) {
        unsigned long e = 1;
        for (int r = 0; r < i - j; ++r) e *= static_cast<unsigned long>(p);
        Exponents ex(ctx->names.size(), 0);
        ex[vars[j]] = static_cast<int>(e);
        acc.add_term(ex, Rational(pj));
        pj *= p;
    }
    return acc;
}

QSeries ghost_polynomial(long p, int i) {
    if (i < 0) throw Error("ghost_polynomial: i >= 0 required");
    auto ctx = make_q_context(indexed_names("T", i + 1), witt_weights(p, i + 1));
    std::vector<int> slots(i + 1);
    for (int j = 0; j <= i; ++j) slots[j] = j;
    return ghost_in(ctx, p, i, slots);
}

/*
 * Solve Phi_i(Z_0..Z_i) = rhs_i inductively: p^i Z_i = rhs_i - sum_{j<i} p^j
 * Z_j^{p^{i-j}}. Integrality of each division is the classical theorem; a
 * failure is a bug, not an input condition.
 */
static std::vector<QSeries> solve_ghost(long p, int count,
                                        const std::vector<QSeries>& rhs) {
    std::vector<QSeries> z;
    for (int i = 0; i < count; ++i) {
        QSeries acc = rhs[i];
        mpz_class pj = 1;
        for (int j = 0; j < i; ++j) {
            unsigned long e = 1;
            for (int r = 0; r < i - j; ++r) e *= static_cast<unsigned long>(p);
            acc -= z[j].pow(e).scaled(Rational(pj));
            pj *= p;
        }
        try {
            z.push_back(series_exact_div_p(acc, i, p));
        } catch (const NotDivisible&) {
            throw IntegralityFailure("ghost solving hit a non-integral division at level " +
                                     std::to_string(i));
        }
        if (!is_integral(z.back()))
            throw IntegralityFailure("structure polynomial " + std::to_string(i) +
                                     " is not integral");
    }
    return z;
}

std::shared_ptr<const WittSystem> build_witt_system(long p, int n) {
    if (witt_length_cap(p) == 0)
        throw ConfigError("unsupported prime " + std::to_string(p));
    if (n < 1 || n > witt_length_cap(p))
        throw ConfigError("witt length " + std::to_string(n) + " out of range for p = " +
                          std::to_string(p) + " (cap " +
                          std::to_string(witt_length_cap(p)) + ")");

    static std::mutex mu;
    static std::map<std::pair<long, int>, std::shared_ptr<const WittSystem>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({p, n});
        if (it != cache.end()) return it->second;
    }

    auto sys = std::make_shared<WittSystem>();
    sys->p = p;
    sys->n = n;

    auto xnames = indexed_names("X", n);
    auto ynames = indexed_names("Y", n);
    std::vector<std::string> names = xnames;
    names.insert(names.end(), ynames.begin(), ynames.end());
    std::vector<int> ws = witt_weights(p, n);
    std::vector<int> weights = ws;
    weights.insert(weights.end(), ws.begin(), ws.end());
    sys->xy = make_q_context(names, weights);
    sys->t = make_q_context(indexed_names("T", n + 1), witt_weights(p, n + 1));

    std::vector<int> xs(n), ys(n), ts(n + 1);
    for (int i = 0; i < n; ++i) xs[i] = i, ys[i] = n + i;
    for (int i = 0; i <= n; ++i) ts[i] = i;

    std::vector<QSeries> sum_rhs, prod_rhs, frob_rhs;
    for (int i = 0; i < n; ++i) {
        QSeries gx = ghost_in(sys->xy, p, i, xs);
        QSeries gy = ghost_in(sys->xy, p, i, ys);
        sum_rhs.push_back(gx + gy);
        prod_rhs.push_back(gx * gy);
        frob_rhs.push_back(ghost_in(sys->t, p, i + 1, ts));
    }
    sys->sum_polys = solve_ghost(p, n, sum_rhs);
    sys->product_polys = solve_ghost(p, n, prod_rhs);
    sys->frobenius_polys = solve_ghost(p, n, frob_rhs);
    for (int i = 0; i <= n; ++i) sys->ghost_t.push_back(ghost_in(sys->t, p, i, ts));

    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(std::make_pair(p, n), sys);
    return sys;
}

QSeries sekiguchi_suwa_G(const WittSystem& sys, int i) {
    if (i < 0 || i >= sys.n)
        throw Error("sekiguchi_suwa_G: need 0 <= i < n");
    QSeries tp = QSeries::variable(sys.t, "T" + std::to_string(i))
                     .pow(static_cast<unsigned long>(sys.p));
    QSeries num = sys.frobenius_polys[i] - tp;
    QSeries g;
    try {
        g = series_exact_div_p(num, 1, sys.p);
    } catch (const NotDivisible&) {
        throw IntegralityFailure("F_i - T_i^p not divisible by p");
    }
    if (!is_integral(g)) throw IntegralityFailure("G_i not integral");
    return g;
}

QSeries sekiguchi_suwa_recursion_rhs(const WittSystem& sys, int i) {
    const long p = sys.p;
    QSeries rhs = QSeries::variable(sys.t, "T" + std::to_string(i + 1));
    for (int j = 0; j < i; ++j) {
        QSeries gj = sekiguchi_suwa_G(sys, j);
        QSeries tj = QSeries::variable(sys.t, "T" + std::to_string(j));
        unsigned long pij = 1;
        for (int r = 0; r < i - j; ++r) pij *= static_cast<unsigned long>(p);
        if (p > 2) {
            rhs -= tj.pow(static_cast<unsigned long>(p) * (pij - 1)) * gj;
        } else {
            rhs -= tj.pow(2 * (pij - 1)) * gj;
            rhs -= tj.pow(2 * (pij - 2)) * (gj * gj);
        }
    }
    return rhs;
}

bool sekiguchi_suwa_recursion_mod_p(const WittSystem& sys, int i) {
    QSeries diff = sekiguchi_suwa_G(sys, i) - sekiguchi_suwa_recursion_rhs(sys, i);
    for (const auto& [e, c] : diff.terms()) {
        auto v = valuation_p(c, sys.p);
        if (v.has_value() && *v < 1) return false;
    }
    return true;
}

WittVector witt_zero(long p, int k, int n) {
    WittVector v;
    v.p = p;
    v.coords.assign(n, Zq(p, k, 0));
    return v;
}

WittVector teichmuller(const Zq& a, int n) {
    WittVector v = witt_zero(a.p(), a.k(), n);
    v.coords[0] = a;
    return v;
}

WittVector verschiebung(const WittVector& x) {
    WittVector v = x;
    for (int i = x.length() - 1; i >= 1; --i) v.coords[i] = x.coords[i - 1];
    if (x.length() > 0) v.coords[0] = Zq(x.p, x.coords[0].k(), 0);
    return v;
}

Zq eval_at(const QSeries& f, const std::vector<Zq>& coords) {
    if (coords.size() != f.context()->names.size())
        throw LengthMismatch("eval_at: coordinate count mismatch");
    if (coords.empty()) throw Error("eval_at: empty context");
    const long p = coords[0].p();
    const int k = coords[0].k();
    Zq acc(p, k, 0);
    for (const auto& [e, c] : f.terms()) {
        if (!c.is_integer()) throw IntegralityFailure("eval_at: non-integer coefficient");
        mpz_class q = pow_z(p, static_cast<unsigned long>(k));
        mpz_class cm = c.num() % q;
        if (cm < 0) cm += q;
        Zq term(p, k, cm.get_si());
        for (size_t i = 0; i < coords.size(); ++i)
            if (e[i]) term *= coords[i].pow(static_cast<unsigned long>(e[i]));
        acc += term;
    }
    return acc;
}

static WittVector eval_structure(const WittSystem& sys, const std::vector<QSeries>& polys,
                                 const WittVector& x, const WittVector& y) {
    if (x.p != sys.p || y.p != sys.p || x.length() != sys.n || y.length() != sys.n)
        throw LengthMismatch("witt arithmetic: prime/length mismatch with system");
    std::vector<Zq> coords = x.coords;
    coords.insert(coords.end(), y.coords.begin(), y.coords.end());
    WittVector r = witt_zero(sys.p, x.coords[0].k(), sys.n);
    for (int i = 0; i < sys.n; ++i) r.coords[i] = eval_at(polys[i], coords);
    return r;
}

WittVector witt_add(const WittSystem& sys, const WittVector& x, const WittVector& y) {
    return eval_structure(sys, sys.sum_polys, x, y);
}

WittVector witt_mul(const WittSystem& sys, const WittVector& x, const WittVector& y) {
    return eval_structure(sys, sys.product_polys, x, y);
}

WittVector witt_frobenius(const WittSystem& sys, const WittVector& x) {
    if (x.p != sys.p || x.length() != sys.n)
        throw LengthMismatch("witt_frobenius: prime/length mismatch");
    WittVector r = witt_zero(sys.p, x.coords[0].k(), sys.n - 1);
    // F_i uses T_0..T_{i+1}; pad the unused tail slots with zero
    std::vector<Zq> coords = x.coords;
    coords.push_back(Zq(sys.p, x.coords[0].k(), 0));
    for (int i = 0; i + 1 < sys.n; ++i) r.coords[i] = eval_at(sys.frobenius_polys[i], coords);
    return r;
}

}  // namespace charp
