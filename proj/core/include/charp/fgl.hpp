#pragma once

#include "charp/series.hpp"
#include "charp/witt.hpp"

namespace charp {

/*
 * One-dimensional formal group laws over truncated series rings. Laws live in
 * variables v, w of weight 1; the deformation variable lam has weight -1 and
 * its own exponent cap. All identity checks compare truncated series for
 * exact equality (optionally after reduction mod p); there is no tolerance.
 */
struct FormalGroupLaw {
    QSeries law;  // context: v, w [, lam]
};

/* series in one variable u [, lam] with zero constant term */
struct SeriesMorphism {
    explicit SeriesMorphism(QSeries s) : series(std::move(s)) {
        if (!(series.constant_term() == Rational(0)))
            throw NonComposable("SeriesMorphism: nonzero constant term");
    }
    QSeries series;
};

/* v, w [, lam] with plain-degree cap and lam exponent cap (< 0 = no lam) */
Ctx<Rational> fgl_context(long degree_cap, long lambda_cap);

/* u [, lam] */
Ctx<Rational> morphism_context(long degree_cap, long lambda_cap);

/*
 * Unit, commutativity, associativity up to the context truncation. With
 * mod_p > 0 the axioms are checked on reductions mod p (exact arithmetic on
 * valuations), which is the right reading for laws defined over F_p.
 */
bool validate_fgl(const FormalGroupLaw& F, long mod_p = 0);

/* v + w + lam v w */
FormalGroupLaw g_lambda(long degree_cap, long lambda_cap);

/* additive law v + w, no lam */
FormalGroupLaw additive_law(long degree_cap);

/* specialize lam to an integer constant, landing in a lam-free context */
FormalGroupLaw specialize_lambda(const FormalGroupLaw& F, long value, long degree_cap);

/* E_lam(u) = sum_{n=1}^{p-1} lam^{n-1} u^n / n! */
SeriesMorphism truncated_exponential(long p, long degree_cap, long lambda_cap);

/* phi(F(u,v)) == G(phi u, phi v) mod lam^lambda_modulus, to plain degree D */
bool is_homomorphism(const SeriesMorphism& phi, const FormalGroupLaw& F,
                     const FormalGroupLaw& G, long lambda_modulus, long degree);

/* exp(sum_{p^r <= D} T^{p^r}/p^r), truncated at degree D; p-integral */
QSeries artin_hasse(long p, long degree);

/* largest m with lam^{p^m - 1} T_m alive mod lam^{D_lambda} */
int psi_effective_m(long p, long d_lambda);

/*
 * Psi(T_0..T_m) = (prod_j AH(lam^{p^j} T_j) - 1)/lam, truncated to plain
 * T-degree <= d_t and lam exponent < d_lambda. Rejects m beyond
 * psi_effective_m: such coordinates cannot contribute at this precision.
 */
QSeries psi_series(long p, int m, long d_t, long d_lambda);

/*
 * Both homomorphism clauses for Psi on Witt coordinates T_0..T_m:
 *   (a) Psi(S(X,Y)) == Psi(X) + Psi(Y) + lam Psi(X) Psi(Y)
 *   (b) Psi(V(T))   == Psi([lam^{p-1}] T)   (computed via product polynomials)
 */
bool psi_homomorphism_check(long p, int m, long d_t, long d_lambda);

/* v + w + (v^{p^h} + w^{p^h} - (v+w)^{p^h})/p, truncated mod (v,w)^{p^h+1} */
FormalGroupLaw height_h_law(long p, int h);

/* lam^{-1} F(lam v, lam w) for the height-h law, with lam cap p^h */
FormalGroupLaw height_h_rescaled(long p, int h);

/* drop terms with lam exponent above max_exp; no-op without lam */
QSeries restrict_lambda(const QSeries& f, long max_exp);

/* shift lam exponents down by one; every term must have lam exponent >= 1 */
QSeries divide_by_lambda(const QSeries& f);

/* a == b, exactly or after reduction mod p (all difference valuations >= 1) */
bool equal_mod(const QSeries& a, const QSeries& b, long mod_p = 0);

}  // namespace charp
