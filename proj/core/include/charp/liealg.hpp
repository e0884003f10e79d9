#pragma once

#include <map>
#include <string>
#include <vector>

#include "charp/fpmat.hpp"
#include "charp/rng.hpp"

namespace charp {

/*
 * Multilinear Lie elements of arity p over F_p, written in the left-normed
 * bracket basis [[...[X_{s(1)},X_{s(2)}],...],X_{s(p)}] indexed by the
 * (p-1)! permutations with s(1) = 1.
 */
struct MultilinearLie {
    long p = 2;
    int arity = 2;
    std::map<std::vector<int>, int> coeffs;  // permutation (1-based) -> F_p
};

/* arity-p associative words X_{s(1)}...X_{s(p)}, all p! permutations */
struct MultilinearAssoc {
    long p = 2;
    int arity = 2;
    std::map<std::vector<int>, int> coeffs;
};

/* canonical bracket syntax, e.g. "[[X1,X2],X3] + [[X1,X3],X2]" */
std::string lie_str(const MultilinearLie& e);

/* canonical word syntax, e.g. "X1 X2 + X2 X1" */
std::string assoc_str(const MultilinearAssoc& a);

/* sum over s(1)=1 of left-normed brackets, all coefficients 1 */
MultilinearLie w_element(long p);

/* recursive [a,b] = ab - ba expansion */
MultilinearAssoc lie_to_assoc(const MultilinearLie& e);

/* norm N(X_1...X_p) = sum over all permutations */
MultilinearAssoc norm_word(long p);

/* rank of the left-normed basis inside Ass(p); injectivity iff (p-1)! */
int lie_in_assoc_rank(long p);

/*
 * Jacobson's universal Lie polynomial L(x,y) with (x+y)^p = x^p + y^p +
 * L(x,y) in every associative F_p-algebra. Terms are right-nested bracket
 * words ad(z_1)...ad(z_{p-1})(x) with z in {x,y}; built from the coefficient
 * extraction i s_i = [t^{i-1}] ad(tx+y)^{p-1}(x) and certified by associative
 * expansion at construction (CertificationFailure on mismatch).
 */
struct JacobsonL {
    long p = 2;
    // (coefficient, z-word); word entries 0 = x, 1 = y
    std::vector<std::pair<int, std::vector<int>>> terms;
};

JacobsonL jacobson_L(long p);

/* bracket-word syntax, e.g. "[x,[y,x]]" */
std::string jacobson_str(const JacobsonL& L);

FpMat matrix_commutator(const FpMat& a, const FpMat& b);

/* evaluate L at matrices */
FpMat eval_jacobson(const JacobsonL& L, const FpMat& x, const FpMat& y);

/* ad(x) as an n^2 x n^2 matrix acting on vec(gl_n) */
FpMat ad_matrix(const FpMat& x);

struct TrialReport {
    long p = 2;
    int dim = 0;
    int trials = 0;
    int failures = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;

    bool ok() const { return failures == 0; }
};

/*
 * The three restricted-Lie axioms on gl_n(F_p) with x^[p] the matrix p-th
 * power: scaling, the Jacobson sum formula, and ad(x^[p]) = ad(x)^p (the
 * last compared as full operators, not on samples).
 */
TrialReport restricted_checks(int n, long p, int trials, std::uint64_t seed);

/*
 * Verschiebung diagrams on Gamma^p(gl_n), the Sigma_p-invariants of the
 * p-fold tensor power with the orbit-sum basis; V multiplies tensor factors.
 * Diagram 1: V(N(x_1...x_p)) equals the w-evaluation on Sym^p spanning
 * elements. Diagram 2: [V(z), y] equals the right-nested bracket evaluation
 * ad(z_1)...ad(z_p)(y) summed over the orbit, on all basis orbit-sums z and
 * random y.
 */
TrialReport gamma_p_verschiebung_checks(int n, long p, int trials, std::uint64_t seed);

/*
 * Derivation of F_p[x]/(x^N) determined by its value on x. Well-definedness
 * on the quotient needs N g(0) = 0 mod p.
 */
struct TruncatedDerivation {
    long p = 2;
    int N = 2;
    std::vector<int> g;  // g[i] = coefficient of x^i in the value on x

    TruncatedDerivation(long p_, int N_, std::vector<int> g_);
};

/* operator matrix on the monomial basis 1, x, ..., x^{N-1} */
FpMat derivation_matrix(const TruncatedDerivation& d);

/*
 * p-fold composite, returned as a derivation again; NotADerivation if the
 * composite operator fails to be one (checked on all monomial pairs).
 */
TruncatedDerivation derivation_pth_power(const TruncatedDerivation& d);

}  // namespace charp
