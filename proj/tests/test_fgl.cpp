#include "doctest.h"

#include "charp/fgl.hpp"

using namespace charp;

TEST_CASE("validate_fgl") {
    CHECK(validate_fgl(additive_law(6)));
    CHECK(validate_fgl(g_lambda(6, 3)));
    // v + w + v^2 w^2 breaks associativity at degree 5
    auto ctx = fgl_context(5, -1);
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    CHECK(!validate_fgl(FormalGroupLaw{v + w + v * v * w * w}));
}

TEST_CASE("the deformed law and its fibers") {
    auto gl = g_lambda(6, 3);
    CHECK(specialize_lambda(gl, 0, 6).law.str() == "1 * w + 1 * v");
    CHECK(specialize_lambda(gl, 1, 6).law.str() == "1 * w + 1 * v + 1 * v * w");
    CHECK(validate_fgl(gl));
}

TEST_CASE("truncated exponential") {
    CHECK(truncated_exponential(2, 6, 2).series.str() == "1 * u");
    CHECK(truncated_exponential(3, 6, 3).series.str() == "1 * u + 1/2 * u^2 * lam");
    auto e5 = truncated_exponential(5, 6, 5).series;
    CHECK(e5.coefficient({4, 3}) == Rational(1, 24));  // lam^3 u^4 / 4!
    CHECK(e5.term_count() == 4);
    for (long p : {2L, 3L, 5L}) CHECK(is_p_integral(truncated_exponential(p, 10, p).series, p));
}

TEST_CASE("E_lambda splits to order p-2 and no further") {
    for (long p : {2L, 3L, 5L}) {
        long D = 2 * p;
        auto E = truncated_exponential(p, D, p);
        CHECK(is_homomorphism(E, additive_law(D), g_lambda(D, p), p - 1, D));
        CHECK(!is_homomorphism(E, additive_law(D), g_lambda(D, p), p, D));
    }
    // identity map is a homomorphism from the additive law to itself
    auto id = SeriesMorphism(QSeries::variable(morphism_context(6, 2), "u"));
    CHECK(is_homomorphism(id, additive_law(6), additive_law(6), 2, 6));
}

TEST_CASE("artin-hasse exponential") {
    auto ah2 = artin_hasse(2, 8);
    CHECK(ah2.coefficient({0}) == Rational(1));
    CHECK(ah2.coefficient({1}) == Rational(1));
    CHECK(ah2.coefficient({2}) == Rational(1));  // 1/2 from T^2/2 plus 1/2 from T^2/2!
    for (long p : {2L, 3L, 5L}) CHECK(is_p_integral(artin_hasse(p, 30), p));
    CHECK(!is_p_integral(artin_hasse(3, 10), 2));  // sanity: integrality is p-specific
}

TEST_CASE("psi series") {
    // Psi = T_0 + lam T_0^2/2 mod lam^2 for p = 3 (input coordinates T_0, T_1)
    QSeries psi3 = psi_series(3, 1, 6, 3);
    auto ctx = psi3.context();
    int t0 = ctx->index_of("T0");
    int li = ctx->index_of("lam");
    QSeries low = restrict_lambda(psi3, 1);
    Exponents e_t0(ctx->names.size(), 0), e_sq(ctx->names.size(), 0);
    e_t0[t0] = 1;
    e_sq[t0] = 2;
    e_sq[li] = 1;
    QSeries expect = QSeries::monomial(ctx, e_t0, Rational(1)) +
                     QSeries::monomial(ctx, e_sq, Rational(1, 2));
    CHECK(low == expect);

    // lam := 0 recovers the projection to T_0
    std::map<std::string, QSeries> lz{{"lam", QSeries::zero(ctx)}};
    CHECK(substitute(psi3, lz, ctx) == QSeries::variable(ctx, "T0"));

    // p-integrality over the rationals before any reduction
    CHECK(is_p_integral(psi_series(2, 1, 4, 3), 2));
    CHECK(is_p_integral(psi3, 3));

    // coordinates beyond the lam-relevance bound are rejected
    CHECK_THROWS(psi_series(2, 2, 4, 3));
    CHECK_THROWS(psi_series(3, 1, 6, 2));

    // degenerate second clause at lam = 0: the projection kills the image of V
    QSeries psi2 = psi_series(2, 1, 4, 3);
    auto c2 = psi2.context();
    std::map<std::string, QSeries> vbind{
        {"T0", QSeries::zero(c2)}, {"T1", QSeries::variable(c2, "T0")}};
    QSeries psi_v = substitute(psi2, vbind, c2);
    std::map<std::string, QSeries> lz0{{"lam", QSeries::zero(c2)}};
    CHECK(substitute(psi_v, lz0, c2).is_zero());
}

TEST_CASE("psi against a hand-built product oracle") {
    // independent route: assemble prod AH(lam^{2^j} T_j) with an explicit
    // Taylor loop, subtract 1, divide by lam
    const long p = 2;
    const long dl = 3, dt = 4;
    QSeries psi = psi_series(p, 1, dt, dl);
    auto ctx = psi.context();
    auto one = QSeries::constant(ctx, Rational(1));
    auto lam = QSeries::variable(ctx, "lam");
    QSeries prod = one;
    for (int j = 0; j <= 1; ++j) {
        long lam_pow = j == 0 ? 1 : 2;
        QSeries arg = QSeries::zero(ctx);
        mpz_class pr = 1;
        for (long e = 1; lam_pow * e <= dl; e *= 2) {
            QSeries t = QSeries::variable(ctx, "T" + std::to_string(j)).pow(e) *
                        lam.pow(lam_pow * e);
            arg += t.scaled(Rational(mpz_class(1), pr));
            pr *= 2;
        }
        QSeries expf = one;
        QSeries powacc = one;
        mpz_class nf = 1;
        for (int n = 1; n <= 8; ++n) {
            powacc = powacc * arg;
            if (powacc.is_zero()) break;
            nf *= n;
            expf += powacc.scaled(Rational(mpz_class(1), nf));
        }
        prod = prod * expf;
    }
    CHECK(divide_by_lambda(prod - one) == psi);
}

TEST_CASE("psi homomorphism clauses") {
    CHECK(psi_homomorphism_check(2, 2, 4, 3));
    CHECK(psi_homomorphism_check(2, 2, 6, 4));
    CHECK(psi_homomorphism_check(3, 1, 6, 2));
    CHECK(psi_homomorphism_check(3, 1, 6, 3));
}

TEST_CASE("psi homomorphism with three live factors") {
    // lam precision deep enough that T_2 genuinely contributes
    CHECK(psi_effective_m(2, 5) == 2);
    CHECK(psi_homomorphism_check(2, 2, 8, 5));
    CHECK(psi_effective_m(3, 9) == 2);
    CHECK(psi_homomorphism_check(3, 2, 8, 9));
    CHECK(psi_homomorphism_check(5, 1, 8, 5));
}

TEST_CASE("height-h group laws") {
    auto h21 = height_h_law(2, 1);
    auto ctx = h21.law.context();
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    // computed, not assumed: (v^2 + w^2 - (v+w)^2)/2 = -vw over Q
    CHECK(h21.law == v + w - v * w);
    CHECK(equal_mod(h21.law, v + w + v * w, 2));  // the F_2 form
    CHECK(validate_fgl(h21));

    for (auto [p, h] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2}, {3, 1}}) {
        auto F = height_h_law(p, h);
        CHECK(is_p_integral(F.law, p));
        CHECK(validate_fgl(F, p));
        long ph = 1;
        for (int i = 0; i < h; ++i) ph *= p;
        auto R = height_h_rescaled(p, h);
        auto rc = R.law.context();
        QSeries diff =
            R.law - QSeries::variable(rc, "v") - QSeries::variable(rc, "w");
        int li = rc->index_of("lam");
        for (const auto& [e, c] : diff.terms()) CHECK(e[li] >= ph - 1);
        CHECK(!diff.is_zero());  // the deformation is nontrivial at lam^{p^h - 1}
        // lam := 0 gives the additive law
        std::map<std::string, QSeries> lz{{"lam", QSeries::zero(rc)}};
        CHECK(substitute(R.law, lz, rc) ==
              QSeries::variable(rc, "v") + QSeries::variable(rc, "w"));
    }
}

TEST_CASE("series morphisms require zero constant term") {
    auto ctx = morphism_context(4, 2);
    CHECK_THROWS_AS(SeriesMorphism(QSeries::constant(ctx, Rational(1))), NonComposable);
}
