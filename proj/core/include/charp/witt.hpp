#pragma once

#include <memory>
#include <vector>

#include "charp/series.hpp"

namespace charp {

/*
 * p-typical Witt vectors of finite length n: ghost maps, structure
 * polynomials solved from the ghost equations, Frobenius, Verschiebung, the
 * multiplicative lift and the G_i correction polynomials with F_i = T_i^p +
 * p G_i. Frobenius lives in n+1 coordinates T_0..T_n so G_i exists for
 * i <= n-1 without truncation artifacts. A built system is immutable; all
 * later arithmetic is evaluation.
 */
struct WittSystem {
    long p = 0;
    int n = 0;
    Ctx<Rational> xy;  // X_0..X_{n-1}, Y_0..Y_{n-1}, weight of index i is p^i
    Ctx<Rational> t;   // T_0..T_n
    std::vector<QSeries> sum_polys;        // S_0..S_{n-1} in xy
    std::vector<QSeries> product_polys;    // P_0..P_{n-1} in xy
    std::vector<QSeries> frobenius_polys;  // F_0..F_{n-1} in t
    std::vector<QSeries> ghost_t;          // Phi_0..Phi_n in t
};

/* largest supported length per prime; polynomial size is doubly exponential */
int witt_length_cap(long p);

/* Phi_i(T_0..T_i) = T_0^{p^i} + p T_1^{p^{i-1}} + ... + p^i T_i */
QSeries ghost_polynomial(long p, int i);

/* solve the ghost equations; cached per (p, n) */
std::shared_ptr<const WittSystem> build_witt_system(long p, int n);

/* G_i = (F_i - T_i^p)/p, integral by the classical theorem */
QSeries sekiguchi_suwa_G(const WittSystem& sys, int i);

/*
 * The displayed recursion G_i = T_{i+1} - (corrections), both the p = 2 and
 * p > 2 branches, holds as a congruence mod p (the omitted correction terms
 * all carry a factor of p); this checks it exactly at that precision.
 */
bool sekiguchi_suwa_recursion_mod_p(const WittSystem& sys, int i);

/* right-hand side of the displayed recursion, exact over Q */
QSeries sekiguchi_suwa_recursion_rhs(const WittSystem& sys, int i);

struct WittVector {
    long p = 0;
    std::vector<Zq> coords;

    int length() const { return static_cast<int>(coords.size()); }
};

WittVector witt_zero(long p, int k, int n);

/* multiplicative lift [a] = (a, 0, ..., 0) */
WittVector teichmuller(const Zq& a, int n);

/* (x_0,...,x_{n-1}) -> (0, x_0, ..., x_{n-2}) */
WittVector verschiebung(const WittVector& x);

WittVector witt_add(const WittSystem& sys, const WittVector& x, const WittVector& y);
WittVector witt_mul(const WittSystem& sys, const WittVector& x, const WittVector& y);

/* F drops one coordinate: length n input, length n-1 output */
WittVector witt_frobenius(const WittSystem& sys, const WittVector& x);

/* evaluate an integer-coefficient polynomial at Zq coordinates */
Zq eval_at(const QSeries& f, const std::vector<Zq>& coords);

}  // namespace charp
