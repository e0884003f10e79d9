#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "charp/fpmat.hpp"
#include "charp/rng.hpp"
#include "charp/series.hpp"
#include "charp/witt.hpp"

namespace charp {

/*
 * Base rings Z/p^k[lam]/lam^lcap with k in {1,2}; lcap = 1 means no lam.
 * Elements are single-variable modular series, reusing the ring machinery.
 */
struct GRing {
    long p = 2;
    int k = 1;
    int lcap = 1;

    bool operator==(const GRing&) const = default;
    std::string str() const;
};

Ctx<Zq> gring_context(const GRing& R);

using LSeries = ZqSeries;

LSeries lconst(const Ctx<Zq>& ctx, long v);
LSeries lmono(const Ctx<Zq>& ctx, long v, int lam_exp);

/* dense matrix over a GRing */
struct LMat {
    GRing R;
    Ctx<Zq> ctx;
    int rows = 0, cols = 0;
    std::vector<LSeries> a;

    LMat() = default;
    LMat(const GRing& R_, int r, int c);

    LSeries& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const LSeries& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static LMat identity(const GRing& R, int n);
    bool is_zero() const;
    friend bool operator==(const LMat& x, const LMat& y) {
        return x.R == y.R && x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

LMat lmat_add(const LMat& A, const LMat& B);
LMat lmat_sub(const LMat& A, const LMat& B);
LMat lmat_neg(const LMat& A);
LMat lmat_mul(const LMat& A, const LMat& B);
LMat lmat_scale(const LMat& A, const LSeries& c);
LMat lmat_transpose(const LMat& A);
LMat lmat_kronecker(const LMat& A, const LMat& B);
LMat lmat_pow(const LMat& A, unsigned long e);

/* coefficient-wise ring changes */
LMat lmat_reduce_mod_p(const LMat& A);            // k -> 1
LMat lmat_lambda_zero(const LMat& A);             // lcap -> 1
LMat lmat_lift(const LMat& A, const GRing& to);   // entry-wise value lift
LMat lmat_divide_by_p(const LMat& A);             // k -> k-1, exact

/* lam-graded expansion into F_p blocks (requires k = 1) */
FpMat lmat_fp_expand(const LMat& A);

/*
 * Module with a nilpotent endomorphism theta; the concrete model for
 * representations of the Cartier dual of the additive formal group.
 */
struct ThetaModule {
    GRing R;
    int rank = 0;
    LMat theta;
    std::vector<int> weights;  // optional grading

    ThetaModule(const GRing& R_, int rank_, LMat theta_, std::vector<int> weights_ = {});
};

ThetaModule trivial_module(const GRing& R, int rank = 1);

/* rank 2, theta = [[0,0],[1,0]] */
ThetaModule jordan_tau_module(const GRing& R);

/* theta_{M (x) M'} = theta (x) 1 + 1 (x) theta'; weights add */
ThetaModule tensor(const ThetaModule& M, const ThetaModule& M2);

int nilpotency_index(const ThetaModule& M);

/*
 * RGamma(M) is the two-term complex [M -> M] given by theta; H^0 = ker theta
 * and H^1 = coker theta, reported as invariant factors p^e (e = k means a
 * free Z/p^k summand).
 */
std::pair<std::vector<int>, std::vector<int>> cohomology_of_rep(const ThetaModule& M);

/* cochain complex of theta-modules; d theta = theta d and d^2 = 0 enforced */
struct ThetaComplex {
    GRing R;
    int deg_min = 0;
    std::vector<int> ranks;
    std::vector<LMat> d;      // d[k]: degree deg_min+k -> deg_min+k+1
    std::vector<LMat> theta;  // per degree

    int degree_count() const { return static_cast<int>(ranks.size()); }
};

void validate_theta_complex(const ThetaComplex& C);

ThetaComplex reduce_mod_p(const ThetaComplex& C);
ThetaComplex lambda_zero(const ThetaComplex& C);

/*
 * Co-Lie complex of the deformed Witt-kernel group: degree -1 basis
 * dS_0..dS_{n-1}, degree 0 basis dT_0..dT_n-1, trivial theta, differential
 * over Z/p^2[lam]/lam^p computed from the Witt system's Frobenius linear
 * part: D(dS_i) = p dT_{i+1} - lam^{p^i(p-1)} dT_i, indices >= n and lam
 * exponents >= p dropped.
 */
ThetaComplex colie_complex(long p, int n);

/* plain complex (underlying a theta complex, or a total complex) */
struct ZComplex {
    GRing R;
    int deg_min = 0;
    std::vector<int> ranks;
    std::vector<LMat> d;

    int degree_count() const { return static_cast<int>(ranks.size()); }
};

void validate_zcomplex(const ZComplex& C);

ZComplex underlying(const ThetaComplex& C);

/*
 * RGamma of a theta complex: T^k = C^k + C^{k-1} (the second slot is the
 * cup-with-tau copy), d(x, y) = (d x, theta x - d y).
 */
ZComplex total_complex(const ThetaComplex& C);

/*
 * Dual Hom(C, R): degree k holds the dual of C^{-k}; the differential is
 * delta(f) = -(-1)^{|f|} f o d.
 */
ThetaComplex dual_complex(const ThetaComplex& C);

bool is_cocycle(const ZComplex& C, int deg, const LMat& v);

/*
 * Bockstein: lift a mod-p cocycle into the k=2 complex, apply d, divide by
 * p exactly. Throws LiftNotCocycle when z is not a cocycle mod p. The result
 * is independent of the lift up to coboundary; bockstein_lift_independent
 * verifies that on randomized alternative lifts.
 */
LMat bockstein_cocycle(const ZComplex& C2, int deg, const LMat& z);

bool bockstein_lift_independent(const ZComplex& C2, int deg, const LMat& z, SplitMix64& rng,
                                int samples = 5);

/* class equality in the mod-p complex (k must be 1) */
bool classes_equal(const ZComplex& C1, int deg, const LMat& u, const LMat& v);

/* cohomology class representatives of the mod-p complex, lam-expanded */
FpMat cohomology_reps(const ZComplex& C1, int deg);

struct ExtTable {
    long p = 2;
    int n = 0;
    std::vector<int> ranks;               // per degree 0,1,2
    std::vector<std::vector<std::string>> basis_labels;
    bool pairing_ok = false;              // dT_i / dual basis pairing
    bool reduced_d_zero = false;          // differential vanishes mod (p, lam)
};

/*
 * Ext of the co-Lie complex against F_p via RGamma of the dual: ranks
 * (n, 2n, n) with bases named by the dual coordinates and their tau cups.
 */
ExtTable ext_table(long p, int n);

/*
 * tau is the degree-1 class of the Jordan-block extension; its connecting
 * map sends the generator of H^0 of the quotient to theta(lift) read in the
 * sub, which must be a unit (a generator of H^1 of the trivial module).
 */
Zq tau_connecting_value(const GRing& R);

/*
 * The two expressions for the deformation class agree: Bock(tau d/dT_1)
 * equals tau d/dS_0 in degree-2 cohomology of the total complex of the dual
 * co-Lie complex at lam = 0 (coefficient twist lam^{p-1} carried along both
 * sides). Also checks Bock(d/dT_{i+1}) = -d/dS_i and Bock(tau) = 0.
 */
bool deformation_class_check(long p, int n);

struct LeibnizReport {
    long p = 2;
    int trials = 0;
    int failures = 0;
    std::uint64_t seed = 0;
    bool ok() const { return failures == 0; }
};

/*
 * Both Bockstein Leibniz rules on random small free Z/p^2 complexes:
 * tensor (Koszul signs) and Hom, compared as induced maps on cohomology.
 */
LeibnizReport bockstein_leibniz_check(long p, int trials, std::uint64_t seed);

/* random length-2 complex of free Z/p^2 modules, rank <= 3 per degree */
ZComplex random_zp2_complex(long p, SplitMix64& rng);

ZComplex tensor_complex(const ZComplex& A, const ZComplex& B);
ZComplex hom_complex(const ZComplex& A, const ZComplex& B);

}  // namespace charp
