#include "doctest.h"

#include "charp/rng.hpp"
#include "charp/series_json.hpp"
#include "charp/witt.hpp"

using namespace charp;

TEST_CASE("ghost polynomials") {
    CHECK(ghost_polynomial(2, 0).str() == "1 * T0");
    CHECK(ghost_polynomial(2, 1).str() == "2 * T1 + 1 * T0^2");
    CHECK(ghost_polynomial(3, 2).str() == "9 * T2 + 3 * T1^3 + 1 * T0^9");
}

TEST_CASE("structure polynomials solved from the ghost equations") {
    auto sys = build_witt_system(2, 3);
    CHECK(sys->sum_polys[0].str() == "1 * Y0 + 1 * X0");
    // frozen from the ghost-equation oracle: solve Phi_1(S) = Phi_1(X) + Phi_1(Y)
    CHECK(sys->sum_polys[1].str() == "1 * Y1 + 1 * X1 + -1 * X0 * Y0");
    CHECK(sys->frobenius_polys[0].str() == "2 * T1 + 1 * T0^2");

    auto s3 = build_witt_system(3, 2);
    CHECK(s3->frobenius_polys[0].str() == "3 * T1 + 1 * T0^3");
    CHECK(s3->product_polys[1].str() ==
          "3 * X1 * Y1 + 1 * X1 * Y0^3 + 1 * X0^3 * Y1");
}

TEST_CASE("build caches and caps") {
    auto a = build_witt_system(2, 3);
    auto b = build_witt_system(2, 3);
    CHECK(a.get() == b.get());  // ghost solving runs once per (p, n)
    CHECK_THROWS_AS(build_witt_system(2, 5), ConfigError);
    CHECK_THROWS_AS(build_witt_system(5, 3), ConfigError);
    CHECK_THROWS_AS(build_witt_system(7, 1), ConfigError);
}

TEST_CASE("verschiebung is the coordinate shift") {
    WittVector x = witt_zero(2, 2, 2);
    x.coords[0] = Zq(2, 2, 3);
    x.coords[1] = Zq(2, 2, 1);
    WittVector v = verschiebung(x);
    CHECK(v.coords[0].is_zero());
    CHECK(v.coords[1].value() == 3);
    WittVector z = witt_zero(2, 2, 3);
    WittVector vz = verschiebung(z);
    for (const auto& c : vz.coords) CHECK(c.is_zero());
}

TEST_CASE("teichmuller lift") {
    auto sys = build_witt_system(2, 3);
    // [1] is the multiplicative identity
    WittVector one = teichmuller(Zq(2, 3, 1), 3);
    SplitMix64 rng(2);
    for (int t = 0; t < 25; ++t) {
        WittVector x = witt_zero(2, 3, 3);
        for (auto& c : x.coords) c = Zq(2, 3, rng.mod(8));
        WittVector prod = witt_mul(*sys, one, x);
        for (int i = 0; i < 3; ++i) CHECK(prod.coords[i] == x.coords[i]);
    }
    // Phi_2([a]) = a^4 for p = 2: [a] = (a,0,0) makes every ghost a power of a
    auto ab = make_q_context({"a"}, {1});
    std::map<std::string, QSeries> bind{
        {"T0", QSeries::variable(ab, "a")}, {"T1", QSeries::zero(ab)},
        {"T2", QSeries::zero(ab)}};
    CHECK(substitute(ghost_polynomial(2, 2), bind, ab) == QSeries::variable(ab, "a").pow(4));
}

TEST_CASE("teichmuller is multiplicative, symbolically") {
    auto sys = build_witt_system(2, 3);
    auto ab = make_q_context({"a", "b"}, {1, 1});
    std::map<std::string, QSeries> bind;
    for (int i = 0; i < 3; ++i) {
        bind["X" + std::to_string(i)] =
            i == 0 ? QSeries::variable(ab, "a") : QSeries::zero(ab);
        bind["Y" + std::to_string(i)] =
            i == 0 ? QSeries::variable(ab, "b") : QSeries::zero(ab);
    }
    // [a] [b] - [ab] is the zero vector
    CHECK(substitute(sys->product_polys[0], bind, ab) ==
          QSeries::variable(ab, "a") * QSeries::variable(ab, "b"));
    CHECK(substitute(sys->product_polys[1], bind, ab).is_zero());
    CHECK(substitute(sys->product_polys[2], bind, ab).is_zero());
}

TEST_CASE("sekiguchi-suwa polynomials") {
    auto s2 = build_witt_system(2, 3);
    CHECK(sekiguchi_suwa_G(*s2, 0).str() == "1 * T1");
    // frozen from (F_1 - T_1^2)/2 computed over the rationals
    CHECK(sekiguchi_suwa_G(*s2, 1).str() == "1 * T2 + -1 * T1^2 + -1 * T0^2 * T1");
    // for p = 2, i = 1 the displayed recursion even holds exactly over Z
    CHECK(sekiguchi_suwa_G(*s2, 1) == sekiguchi_suwa_recursion_rhs(*s2, 1));
    CHECK(sekiguchi_suwa_recursion_mod_p(*s2, 2));

    auto s3 = build_witt_system(3, 3);
    // over Z the recursion fails for p = 3 (the dropped terms are divisible by 3)
    CHECK(sekiguchi_suwa_G(*s3, 1).str() ==
          "1 * T2 + -3 * T1^3 + -3 * T0^3 * T1^2 + -1 * T0^6 * T1");
    CHECK(!(sekiguchi_suwa_G(*s3, 1) == sekiguchi_suwa_recursion_rhs(*s3, 1)));
    CHECK(sekiguchi_suwa_recursion_mod_p(*s3, 1));
    CHECK(sekiguchi_suwa_recursion_mod_p(*s3, 2));

    // dG_i at the origin is dT_{i+1} on the nose
    for (int i = 0; i < 3; ++i) {
        CHECK(sekiguchi_suwa_G(*s2, i).linear_part() ==
              QSeries::variable(s2->t, "T" + std::to_string(i + 1)));
        CHECK(sekiguchi_suwa_G(*s3, i).linear_part() ==
              QSeries::variable(s3->t, "T" + std::to_string(i + 1)));
    }
}

TEST_CASE("frobenius times verschiebung is p-fold addition") {
    for (long p : {2L, 3L}) {
        int n = p == 2 ? 3 : 3;
        auto sys = build_witt_system(p, n);
        SplitMix64 rng(7);
        for (int k = 1; k <= 3; ++k) {
            for (int t = 0; t < 100; ++t) {
                WittVector x = witt_zero(p, k, n);
                for (auto& c : x.coords) c = Zq(p, k, rng.mod(c.modulus()));
                WittVector fv = witt_frobenius(*sys, verschiebung(x));
                WittVector s = witt_zero(p, k, n);
                for (long i = 0; i < p; ++i) s = witt_add(*sys, s, x);
                for (int i = 0; i + 1 < n; ++i) CHECK(fv.coords[i] == s.coords[i]);
            }
        }
    }
}

TEST_CASE("witt arithmetic error paths") {
    auto sys = build_witt_system(2, 3);
    WittVector x = witt_zero(2, 2, 3);
    WittVector y = witt_zero(2, 2, 2);
    CHECK_THROWS_AS(witt_add(*sys, x, y), LengthMismatch);
    WittVector z = witt_zero(3, 2, 3);
    CHECK_THROWS_AS(witt_add(*sys, x, z), LengthMismatch);
}

TEST_CASE("structure polynomials export to JSON") {
    auto sys = build_witt_system(2, 2);
    std::string j = witt_polys_json(*sys);
    CHECK(j.find("\"sum_polys\"") != std::string::npos);
    CHECK(j.find("\"sekiguchi_suwa_G\"") != std::string::npos);
    // golden: S_1 = Y1 + X1 - X0 Y0 appears with its exponent rows
    CHECK(j.find("\"c\": \"-1\"") != std::string::npos);
}
