#include "doctest.h"

#include "charp/liealg.hpp"

using namespace charp;

TEST_CASE("w element") {
    CHECK(w_element(2).coeffs.size() == 1);
    CHECK(w_element(3).coeffs.size() == 2);
    CHECK(w_element(5).coeffs.size() == 24);
    for (const auto& [perm, c] : w_element(5).coeffs) {
        CHECK(perm[0] == 1);
        CHECK(c == 1);
    }
    CHECK_THROWS_AS(w_element(7), ArityTooLarge);
}

TEST_CASE("canonical printing") {
    CHECK(lie_str(w_element(3)) == "[[X1,X2],X3] + [[X1,X3],X2]");
    CHECK(assoc_str(norm_word(2)) == "X1 X2 + X2 X1");
}

TEST_CASE("bracket expansion") {
    // [X1, X2] = X1 X2 - X2 X1
    MultilinearLie e;
    e.p = 3;
    e.arity = 2;
    e.coeffs[{1, 2}] = 1;
    auto a = lie_to_assoc(e);
    CHECK(a.coeffs.at({1, 2}) == 1);
    CHECK(a.coeffs.at({2, 1}) == 2);  // -1 mod 3
    // over F_2 the signs vanish: X1 X2 + X2 X1 = N(X1 X2)
    MultilinearLie e2;
    e2.p = 2;
    e2.arity = 2;
    e2.coeffs[{1, 2}] = 1;
    CHECK(lie_to_assoc(e2).coeffs == norm_word(2).coeffs);
}

TEST_CASE("w maps to the norm of the long word") {
    for (long p : {2L, 3L, 5L})
        CHECK(lie_to_assoc(w_element(p)).coeffs == norm_word(p).coeffs);
}

TEST_CASE("left-normed basis is independent inside Ass(p)") {
    CHECK(lie_in_assoc_rank(2) == 1);
    CHECK(lie_in_assoc_rank(3) == 2);
    CHECK(lie_in_assoc_rank(5) == 24);
}

TEST_CASE("jacobson polynomial") {
    // construction self-certifies; failure would throw
    auto L2 = jacobson_L(2);
    CHECK(L2.terms.size() == 1);
    CHECK(jacobson_str(L2) == "[y,x]");  // equals [x,y] mod 2

    auto L3 = jacobson_L(3);
    FpMat x(3, 2, 2), y(3, 2, 2), zero(3, 2, 2);
    x.at(0, 1) = 1;
    y.at(1, 0) = 1;
    FpMat r = eval_jacobson(L3, x, y);
    FpMat expect(3, 2, 2);
    expect.at(0, 1) = 1;
    expect.at(1, 0) = 1;
    CHECK(r == expect);  // (x+y)^3 = x+y, x^3 = y^3 = 0
    CHECK(eval_jacobson(L3, x, zero) == zero);

    auto L5 = jacobson_L(5);
    FpMat y5(5, 2, 2);
    y5.at(1, 0) = 1;
    CHECK(eval_jacobson(L5, y5, FpMat(5, 2, 2)) == FpMat(5, 2, 2));
}

TEST_CASE("restricted axioms on matrix algebras") {
    for (auto [n, p] : std::vector<std::pair<int, long>>{{2, 2}, {3, 3}, {2, 5}}) {
        auto rep = restricted_checks(n, p, 100, 0);
        CHECK(rep.failures == 0);
        CHECK(rep.trials == 100);
    }
}

TEST_CASE("nilpotent element consistency") {
    // x with x^p = 0: ad(x)^p = ad(x^p) = 0
    FpMat x(3, 3, 3);
    x.at(0, 1) = 1;
    x.at(1, 2) = 1;  // strictly upper shift, x^3 = 0
    CHECK(fp_pow(x, 3).is_zero());
    CHECK(fp_pow(ad_matrix(x), 3).is_zero());
}

TEST_CASE("gamma_p diagrams") {
    for (auto [n, p] : std::vector<std::pair<int, long>>{{2, 2}, {3, 2}, {2, 3}, {3, 3}}) {
        auto rep = gamma_p_verschiebung_checks(n, p, 10, 1);
        CHECK(rep.failures == 0);
    }
    CHECK_THROWS_AS(gamma_p_verschiebung_checks(2, 5, 1, 0), ArityTooLarge);
}

TEST_CASE("derivations of the truncated line") {
    // x d/dx is fixed by the p-operation
    for (long p : {2L, 3L, 5L}) {
        TruncatedDerivation xi(p, static_cast<int>(2 * p), {0, 1});
        CHECK(derivation_pth_power(xi).g == xi.g);
        TruncatedDerivation dd(p, static_cast<int>(2 * p), {1});
        for (int c : derivation_pth_power(dd).g) CHECK(c == 0);
    }
    // ideal preservation: d/dx needs p | N
    CHECK_THROWS_AS(TruncatedDerivation(3, 4, {1}), NotADerivation);
    // value with zero constant term is fine for any N
    TruncatedDerivation ok(3, 4, {0, 2, 1});
    auto q = derivation_pth_power(ok);
    CHECK(q.N == 4);
}

TEST_CASE("derivation matrix acts by the Leibniz rule") {
    TruncatedDerivation xi(3, 6, {0, 1, 2});
    FpMat M = derivation_matrix(xi);
    // D(x * x) = 2 x D(x)
    for (int e = 0; e < 6; ++e) {
        long lhs = M.at(e, 2);
        long rhs = 0;
        if (e - 1 >= 0) rhs = 2L * M.at(e - 1, 1) % 3;
        CHECK(lhs == rhs);
    }
}
