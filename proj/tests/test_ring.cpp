#include "doctest.h"

#include "charp/rng.hpp"
#include "charp/series.hpp"
#include "charp/series_json.hpp"

using namespace charp;

TEST_CASE("p-adic valuation") {
    CHECK(valuation_p(Rational(4, 3), 2) == 2);
    CHECK(valuation_p(Rational(1, 2), 2) == -1);
    CHECK(!valuation_p(Rational(0), 5).has_value());  // infinity
    CHECK(valuation_p(Rational(18), 3) == 2);
}

TEST_CASE("exact division by p powers") {
    CHECK(exact_div_p(Rational(12), 2, 2) == Rational(3));
    CHECK(exact_div_p(Rational(6), 1, 3) == Rational(2));
    CHECK_THROWS_AS(exact_div_p(Rational(1), 1, 2), NotDivisible);
    CHECK(exact_div_p(Rational(0), 3, 2) == Rational(0));
}

TEST_CASE("exact_div_p inverts multiplication by p^e") {
    SplitMix64 rng(3);
    for (long p : {2L, 3L, 5L})
        for (int t = 0; t < 40; ++t) {
            long num = rng.mod(50) - 25;
            long den = 1 + rng.mod(24);
            while (den % p == 0) den++;
            Rational x(num, den);
            long e = rng.mod(4);
            mpz_class pe = pow_z(p, static_cast<unsigned long>(e));
            CHECK(exact_div_p(x * Rational(pe), e, p) == x);
        }
}

TEST_CASE("p-integrality and reduction") {
    CHECK(is_p_integral(Rational(1, 3), 2));
    CHECK(!is_p_integral(Rational(1, 2), 2));
    CHECK(reduce_rational(Rational(1, 3), 2, 2).value() == 3);  // 3 * 3 = 9 = 1 mod 4
    CHECK_THROWS_AS(reduce_rational(Rational(1, 2), 2, 2), NotDivisible);
}

TEST_CASE("reduction is a ring homomorphism on p-integral inputs") {
    SplitMix64 rng(5);
    for (long p : {2L, 3L, 5L}) {
        for (int t = 0; t < 50; ++t) {
            long na = rng.mod(40) - 20, nb = rng.mod(40) - 20;
            long da = 1 + rng.mod(20), db = 1 + rng.mod(20);
            while (da % p == 0) da++;
            while (db % p == 0) db++;
            Rational a(na, da), b(nb, db);
            auto r = [&](const Rational& x) { return reduce_rational(x, p, 2); };
            CHECK(r(a + b) == r(a) + r(b));
            CHECK(r(a * b) == r(a) * r(b));
        }
    }
}

static Ctx<Rational> uv_ctx(long d) {
    Truncation t;
    t.degree_cap = d;
    return make_q_context({"u", "v"}, {1, 1}, t);
}

TEST_CASE("series multiplication") {
    auto ctx = uv_ctx(2);
    auto u = QSeries::variable(ctx, "u");
    auto one = QSeries::constant(ctx, Rational(1));
    CHECK((one + u) * (one - u) == one - u * u);
    CHECK((one + u) * one == one + u);

    // (u + lam u^2/2)^2 with degree cap 4 and lam cap 1: u^2 + lam u^3
    Truncation t;
    t.degree_cap = 4;
    t.var_caps = {-1, 1};
    auto cl = make_q_context({"u", "lam"}, {1, -1}, t);
    auto uu = QSeries::variable(cl, "u");
    auto lam = QSeries::variable(cl, "lam");
    QSeries f = uu + (lam * uu * uu).scaled(Rational(1, 2));
    CHECK(f * f == uu * uu + lam * uu.pow(3));
}

TEST_CASE("series multiplication is commutative, associative, distributive") {
    SplitMix64 rng(11);
    auto ctx = uv_ctx(4);
    auto rand_series = [&]() {
        QSeries s(ctx);
        for (int t = 0; t < 5; ++t) {
            Exponents e{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3))};
            s.add_term(e, Rational(rng.mod(9) - 4, 1 + rng.mod(3)));
        }
        return s;
    };
    for (int t = 0; t < 30; ++t) {
        QSeries a = rand_series(), b = rand_series(), c = rand_series();
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("substitution") {
    auto ctx = make_q_context({"v", "w"}, {1, 1});
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    auto tgt = make_q_context({"u"}, {1});
    auto u = QSeries::variable(tgt, "u");
    CHECK(substitute(v + w, {{"v", u}, {"w", u}}, tgt) == u.scaled(Rational(2)));

    // nonzero constant term on a positive-weight variable is rejected
    auto bad = QSeries::constant(tgt, Rational(1)) + u;
    CHECK_THROWS_AS(substitute(v + w, {{"v", bad}, {"w", u}}, tgt), NonComposable);
    CHECK_THROWS_AS(substitute(v + w, {{"v", u}}, tgt), IncompatibleRings);  // w missing
}

TEST_CASE("substitution composes") {
    Truncation t;
    t.degree_cap = 5;
    auto cf = make_q_context({"x"}, {1}, t);
    auto cg = make_q_context({"y"}, {1}, t);
    auto ch = make_q_context({"z"}, {1}, t);
    auto x = QSeries::variable(cf, "x");
    auto y = QSeries::variable(cg, "y");
    auto z = QSeries::variable(ch, "z");
    QSeries f = x + x * x;
    QSeries g = y + y * y * y;
    QSeries h = z * z;
    QSeries gh = substitute(g, {{"y", h}}, ch);
    CHECK(substitute(substitute(f, {{"x", g}}, cg), {{"y", h}}, ch) ==
          substitute(f, {{"x", gh}}, ch));
}

TEST_CASE("truncated exponential") {
    Truncation t;
    t.degree_cap = 3;
    auto ctx = make_q_context({"u"}, {1}, t);
    auto u = QSeries::variable(ctx, "u");
    auto one = QSeries::constant(ctx, Rational(1));
    CHECK(exp_truncated(QSeries::zero(ctx)) == one);
    CHECK(exp_truncated(u) ==
          one + u + (u * u).scaled(Rational(1, 2)) + u.pow(3).scaled(Rational(1, 6)));

    // exp(T + T^2/2) to degree 2: the T^2 coefficient is 1/2 + 1/2 = 1
    Truncation t2;
    t2.degree_cap = 2;
    auto c2 = make_q_context({"T"}, {1}, t2);
    auto T = QSeries::variable(c2, "T");
    QSeries f = T + (T * T).scaled(Rational(1, 2));
    CHECK(exp_truncated(f) == QSeries::constant(c2, Rational(1)) + T + T * T);

    CHECK_THROWS_AS(exp_truncated(one), NonComposable);
    auto zctx = make_zq_context({"u"}, {1}, 2, 1, t);
    CHECK_THROWS_AS(exp_truncated(ZqSeries::variable(zctx, "u")), InvalidCoefficientRing);

    // no active cap on the variable: exp cannot terminate
    auto free_ctx = make_q_context({"u"}, {1});
    CHECK_THROWS_AS(exp_truncated(QSeries::variable(free_ctx, "u")), NonComposable);
}

TEST_CASE("exp is multiplicative after truncation") {
    Truncation t;
    t.degree_cap = 4;
    auto ctx = make_q_context({"u", "v"}, {1, 1}, t);
    auto u = QSeries::variable(ctx, "u");
    auto v = QSeries::variable(ctx, "v");
    QSeries f = u + (u * u).scaled(Rational(1, 3));
    QSeries g = v.scaled(Rational(2)) + u * v;
    CHECK(exp_truncated(f + g) == exp_truncated(f) * exp_truncated(g));
}

TEST_CASE("exp agrees with a Taylor-sum oracle under substitution") {
    // oracle: sum u^n / n! assembled by hand, then u bound to lam*u
    Truncation t;
    t.degree_cap = 3;
    t.var_caps = {-1, 2};
    auto ctx = make_q_context({"u", "lam"}, {1, -1}, t);
    auto u = QSeries::variable(ctx, "u");
    auto lam = QSeries::variable(ctx, "lam");
    QSeries taylor = QSeries::constant(ctx, Rational(1));
    mpz_class nf = 1;
    for (int n = 1; n <= 3; ++n) {
        nf *= n;
        taylor += u.pow(n).scaled(Rational(mpz_class(1), nf));
    }
    QSeries composed = substitute(taylor, {{"u", lam * u}}, ctx);
    CHECK(composed == exp_truncated(lam * u));
    // 1 + lam u + lam^2 u^2/2 with the lam^3 term cut by the cap
    QSeries expect = QSeries::constant(ctx, Rational(1)) + lam * u +
                     (lam * lam * u * u).scaled(Rational(1, 2));
    CHECK(composed == expect);
}

TEST_CASE("series p-integrality") {
    Truncation t;
    t.degree_cap = 2;
    auto ctx = make_q_context({"u"}, {1}, t);
    auto u = QSeries::variable(ctx, "u");
    QSeries f = QSeries::constant(ctx, Rational(1)) + u + (u * u).scaled(Rational(1, 2));
    CHECK(is_p_integral(f, 3));
    CHECK(!is_p_integral(f, 2));
}

TEST_CASE("stored terms always respect the truncation") {
    Truncation t;
    t.degree_cap = 3;
    t.var_caps = {2, 1};
    auto ctx = make_q_context({"u", "lam"}, {1, -1}, t);
    auto u = QSeries::variable(ctx, "u");
    auto lam = QSeries::variable(ctx, "lam");
    QSeries f = (QSeries::constant(ctx, Rational(1)) + u + lam).pow(6);
    for (const auto& [e, c] : f.terms()) {
        CHECK(e[0] <= 2);
        CHECK(e[1] <= 1);
        CHECK(ctx->positive_degree(e) <= 3);
    }
}

TEST_CASE("weighted degree cap") {
    Truncation t;
    t.weighted_cap = 2;
    auto ctx = make_q_context({"u", "lam"}, {1, -1}, t);
    auto u = QSeries::variable(ctx, "u");
    // u^3 has weighted degree 3 > 2 and is cut; lam u^3 has weighted degree 2
    CHECK(u.pow(3).is_zero());
    CHECK(!QSeries::monomial(ctx, {3, 1}, Rational(1)).is_zero());
}

TEST_CASE("incompatible contexts are rejected") {
    auto a = make_q_context({"u"}, {1});
    auto b = make_q_context({"u"}, {2});
    CHECK_THROWS_AS(QSeries::variable(a, "u") + QSeries::variable(b, "u"), IncompatibleRings);
}

TEST_CASE("canonical text and JSON forms") {
    Truncation t;
    t.degree_cap = 4;
    auto ctx = make_q_context({"v", "w"}, {1, 1}, t);
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    QSeries f = v + w + (v * w).scaled(Rational(-1, 2));
    CHECK(f.str() == "1 * w + 1 * v + -1/2 * v * w");
    auto j = series_json(f);
    CHECK(j["variables"] == std::vector<std::string>{"v", "w"});
    CHECK(j["terms"].size() == 3);
    CHECK(j["truncation"]["degree_cap"] == 4);
}

TEST_CASE("modular series arithmetic") {
    Truncation t;
    t.var_caps = {1};
    auto ctx = make_zq_context({"lam"}, {-1}, 2, 2, t);
    auto lam = ZqSeries::variable(ctx, "lam");
    auto two = ZqSeries::constant(ctx, Zq(2, 2, 2));
    CHECK((two + two).is_zero());
    CHECK((lam * lam).is_zero());  // cap
    CHECK(reduce_series(two, 1).is_zero());
}

TEST_CASE("rational to modular series reduction") {
    Truncation t;
    t.degree_cap = 2;
    auto ctx = make_q_context({"u"}, {1}, t);
    auto u = QSeries::variable(ctx, "u");
    QSeries f = u.scaled(Rational(5)) + (u * u).scaled(Rational(1, 3));
    ZqSeries g = reduce_mod_pk(f, 2, 2);
    CHECK(g.coefficient({1, }).value() == 1);  // 5 mod 4
    CHECK(g.coefficient({2}).value() == 3);    // 1/3 = 3 mod 4
}
