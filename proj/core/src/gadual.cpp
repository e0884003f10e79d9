#include "charp/gadual.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace charp {

std::string GRing::str() const {
    std::string s = "Z/" + std::to_string(p);
    if (k > 1) s += "^" + std::to_string(k);
    if (lcap > 1) s += "[lam]/lam^" + std::to_string(lcap);
    return s;
}

Ctx<Zq> gring_context(const GRing& R) {
    Truncation t;
    t.var_caps = {static_cast<long>(R.lcap - 1)};
    return make_zq_context({"lam"}, {-1}, R.p, R.k, t);
}

LSeries lconst(const Ctx<Zq>& ctx, long v) {
    Zq c(ctx->czero.p(), ctx->czero.k(), v);
    if (c.is_zero()) return LSeries::zero(ctx);
    return LSeries::constant(ctx, c);
}

LSeries lmono(const Ctx<Zq>& ctx, long v, int lam_exp) {
    Zq c(ctx->czero.p(), ctx->czero.k(), v);
    if (c.is_zero()) return LSeries::zero(ctx);
    return LSeries::monomial(ctx, {lam_exp}, c);
}

LMat::LMat(const GRing& R_, int r, int c) : R(R_), ctx(gring_context(R_)), rows(r), cols(c) {
    a.assign(static_cast<size_t>(r) * c, LSeries::zero(ctx));
}

LMat LMat::identity(const GRing& R, int n) {
    LMat m(R, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = lconst(m.ctx, 1);
    return m;
}

bool LMat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

static void lmat_match(const LMat& A, const LMat& B) {
    if (!(A.R == B.R)) throw RingMismatch("LMat: base rings differ");
}

LMat lmat_add(const LMat& A, const LMat& B) {
    lmat_match(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw LengthMismatch("lmat_add: shapes");
    LMat R(A.R, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = A.a[i] + B.a[i];
    return R;
}

LMat lmat_sub(const LMat& A, const LMat& B) {
    lmat_match(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw LengthMismatch("lmat_sub: shapes");
    LMat R(A.R, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = A.a[i] - B.a[i];
    return R;
}

LMat lmat_neg(const LMat& A) {
    LMat R(A.R, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = -A.a[i];
    return R;
}

LMat lmat_mul(const LMat& A, const LMat& B) {
    lmat_match(A, B);
    if (A.cols != B.rows) throw LengthMismatch("lmat_mul: shapes");
    LMat R(A.R, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.at(i, k).is_zero()) continue;
            for (int j = 0; j < B.cols; ++j) {
                if (B.at(k, j).is_zero()) continue;
                R.at(i, j) += A.at(i, k) * B.at(k, j);
            }
        }
    return R;
}

LMat lmat_scale(const LMat& A, const LSeries& c) {
    LMat R(A.R, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = A.a[i] * c;
    return R;
}

LMat lmat_transpose(const LMat& A) {
    LMat R(A.R, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) R.at(j, i) = A.at(i, j);
    return R;
}

LMat lmat_kronecker(const LMat& A, const LMat& B) {
    lmat_match(A, B);
    LMat R(A.R, A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            if (A.at(i, j).is_zero()) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    R.at(i * B.rows + k, j * B.cols + l) = A.at(i, j) * B.at(k, l);
        }
    return R;
}

LMat lmat_pow(const LMat& A, unsigned long e) {
    LMat R = LMat::identity(A.R, A.rows);
    LMat B = A;
    while (e) {
        if (e & 1) R = lmat_mul(R, B);
        B = lmat_mul(B, B);
        e >>= 1;
    }
    return R;
}

static LMat lmat_map(const LMat& A, const GRing& to,
                     const std::function<std::optional<Zq>(const Zq&)>& f) {
    LMat R(to, A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            LSeries s = LSeries::zero(R.ctx);
            for (const auto& [e, c] : A.at(i, j).terms()) {
                auto v = f(c);
                if (v && !v->is_zero()) s.add_term(e, *v);
            }
            R.at(i, j) = s;
        }
    return R;
}

LMat lmat_reduce_mod_p(const LMat& A) {
    GRing to{A.R.p, 1, A.R.lcap};
    return lmat_map(A, to, [](const Zq& c) { return c.reduce_to(1); });
}

LMat lmat_lambda_zero(const LMat& A) {
    GRing to{A.R.p, A.R.k, 1};
    LMat R(to, A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            for (const auto& [e, c] : A.at(i, j).terms())
                if (e[0] == 0) R.at(i, j) = LSeries::constant(R.ctx, c);
        }
    return R;
}

LMat lmat_lift(const LMat& A, const GRing& to) {
    if (to.p != A.R.p || to.lcap != A.R.lcap || to.k < A.R.k)
        throw RingMismatch("lmat_lift: incompatible target ring");
    return lmat_map(A, to, [&](const Zq& c) { return Zq(to.p, to.k, c.value()); });
}

LMat lmat_divide_by_p(const LMat& A) {
    if (A.R.k < 2) throw Error("lmat_divide_by_p: k >= 2 required");
    GRing to{A.R.p, A.R.k - 1, A.R.lcap};
    return lmat_map(A, to, [](const Zq& c) -> std::optional<Zq> {
        return c.exact_div_p(1);
    });
}

FpMat lmat_fp_expand(const LMat& A) {
    if (A.R.k != 1) throw Error("lmat_fp_expand: k = 1 required");
    const int c = A.R.lcap;
    FpMat F(A.R.p, A.rows * c, A.cols * c);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            for (const auto& [e, z] : A.at(i, j).terms()) {
                int le = e[0];
                for (int b = 0; b + le < c; ++b)
                    F.at(i * c + b + le, j * c + b) = static_cast<int>(z.value());
            }
    return F;
}

/* ---- theta modules ---- */

ThetaModule::ThetaModule(const GRing& R_, int rank_, LMat theta_, std::vector<int> weights_)
    : R(R_), rank(rank_), theta(std::move(theta_)), weights(std::move(weights_)) {
    if (theta.rows != rank || theta.cols != rank)
        throw LengthMismatch("ThetaModule: theta must be rank x rank");
    if (!(theta.R == R)) throw RingMismatch("ThetaModule: theta over wrong ring");
    if (!weights.empty() && static_cast<int>(weights.size()) != rank)
        throw LengthMismatch("ThetaModule: weights size");
    if (rank > 0 && !lmat_pow(theta, static_cast<unsigned long>(rank)).is_zero())
        throw Error("ThetaModule: theta is not nilpotent");
}

ThetaModule trivial_module(const GRing& R, int rank) {
    return ThetaModule(R, rank, LMat(R, rank, rank));
}

ThetaModule jordan_tau_module(const GRing& R) {
    LMat th(R, 2, 2);
    th.at(1, 0) = lconst(th.ctx, 1);
    return ThetaModule(R, 2, th);
}

ThetaModule tensor(const ThetaModule& M, const ThetaModule& M2) {
    if (!(M.R == M2.R)) throw RingMismatch("tensor: base rings differ");
    LMat th = lmat_add(lmat_kronecker(M.theta, LMat::identity(M2.R, M2.rank)),
                       lmat_kronecker(LMat::identity(M.R, M.rank), M2.theta));
    std::vector<int> w;
    if (!M.weights.empty() && !M2.weights.empty())
        for (int i = 0; i < M.rank; ++i)
            for (int j = 0; j < M2.rank; ++j) w.push_back(M.weights[i] + M2.weights[j]);
    return ThetaModule(M.R, M.rank * M2.rank, std::move(th), std::move(w));
}

int nilpotency_index(const ThetaModule& M) {
    LMat acc = LMat::identity(M.R, M.rank);
    for (int e = 0; e <= M.rank; ++e) {
        if (acc.is_zero()) return e;
        acc = lmat_mul(acc, M.theta);
    }
    return M.rank + 1;
}

/* Smith normal form valuations over Z/p^k; val k stands for a zero entry */
static std::vector<int> zq_smith_valuations(std::vector<std::vector<long>> m, long p, int k) {
    long q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    auto val = [&](long v) {
        v = ((v % q) + q) % q;
        if (v == 0) return k;
        int e = 0;
        while (v % p == 0) v /= p, ++e;
        return e;
    };
    auto inv_unit = [&](long u) {
        long a = ((u % q) + q) % q, b = q, x0 = 1, x1 = 0;
        while (b) {
            long t = a / b, tmp = a - t * b;
            a = b;
            b = tmp;
            tmp = x0 - t * x1;
            x0 = x1;
            x1 = tmp;
        }
        return ((x0 % q) + q) % q;
    };
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<int> out;
    int top = 0;
    while (top < rows && top < cols) {
        int bi = -1, bj = -1, bv = k + 1;
        for (int i = top; i < rows; ++i)
            for (int j = top; j < cols; ++j)
                if (val(m[i][j]) < bv) bv = val(m[i][j]), bi = i, bj = j;
        if (bv >= k) break;
        std::swap(m[top], m[bi]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][top], m[i][bj]);
        long pv = 1;
        for (int e = 0; e < bv; ++e) pv *= p;
        long unit = ((m[top][top] % q) + q) % q / pv;
        long iu = inv_unit(unit);
        for (int j = top; j < cols; ++j) m[top][j] = m[top][j] % q * iu % q;
        for (int i = top + 1; i < rows; ++i) {
            long e = ((m[i][top] % q) + q) % q;
            long f = e / pv;  // exact: e has valuation >= bv
            for (int j = top; j < cols; ++j)
                m[i][j] = ((m[i][j] - f * m[top][j]) % q + q) % q;
        }
        for (int j = top + 1; j < cols; ++j) {
            long e = ((m[top][j] % q) + q) % q;
            long f = e / pv;
            for (int i = top; i < rows; ++i)
                m[i][j] = ((m[i][j] - f * m[i][top]) % q + q) % q;
        }
        out.push_back(bv);
        ++top;
    }
    // remaining diagonal slots are zero entries
    int slots = std::min(rows, cols);
    while (static_cast<int>(out.size()) < slots) out.push_back(k);
    return out;
}

/* lam-graded expansion over Z/p^k (plain integer matrix) */
static std::vector<std::vector<long>> zq_expand(const LMat& A) {
    const int c = A.R.lcap;
    std::vector<std::vector<long>> m(static_cast<size_t>(A.rows) * c,
                                     std::vector<long>(static_cast<size_t>(A.cols) * c, 0));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j)
            for (const auto& [e, z] : A.at(i, j).terms()) {
                int le = e[0];
                for (int b = 0; b + le < c; ++b)
                    m[static_cast<size_t>(i * c + b + le)][static_cast<size_t>(j * c + b)] =
                        z.value();
            }
    return m;
}

std::pair<std::vector<int>, std::vector<int>> cohomology_of_rep(const ThetaModule& M) {
    auto vals = zq_smith_valuations(zq_expand(M.theta), M.R.p, M.R.k);
    // ker and coker of multiplication by p^v on Z/p^k are both Z/p^{min(v,k)}
    std::vector<int> factors;
    for (int v : vals)
        if (v > 0) factors.push_back(std::min(v, M.R.k));
    return {factors, factors};
}

/* ---- theta complexes ---- */

void validate_theta_complex(const ThetaComplex& C) {
    const int len = C.degree_count();
    if (static_cast<int>(C.d.size()) != len || static_cast<int>(C.theta.size()) != len)
        throw LengthMismatch("theta complex: field sizes");
    for (int k = 0; k < len; ++k) {
        int trows = k + 1 < len ? C.ranks[k + 1] : 0;
        if (C.d[k].rows != trows || C.d[k].cols != C.ranks[k])
            throw LengthMismatch("theta complex: d shape");
        if (C.theta[k].rows != C.ranks[k] || C.theta[k].cols != C.ranks[k])
            throw LengthMismatch("theta complex: theta shape");
        if (C.ranks[k] > 0 &&
            !lmat_pow(C.theta[k], static_cast<unsigned long>(C.ranks[k])).is_zero())
            throw Error("theta complex: theta not nilpotent");
        if (k + 1 < len) {
            if (!lmat_sub(lmat_mul(C.d[k], C.theta[k]), lmat_mul(C.theta[k + 1], C.d[k]))
                     .is_zero())
                throw Error("theta complex: d theta != theta d");
        }
    }
    for (int k = 0; k + 1 < len; ++k)
        if (!lmat_mul(C.d[k + 1], C.d[k]).is_zero())
            throw Error("theta complex: d^2 != 0");
}

static ThetaComplex map_theta_complex(const ThetaComplex& C, const GRing& to,
                                      LMat (*f)(const LMat&)) {
    ThetaComplex R;
    R.R = to;
    R.deg_min = C.deg_min;
    R.ranks = C.ranks;
    for (const auto& m : C.d) R.d.push_back(f(m));
    for (const auto& m : C.theta) R.theta.push_back(f(m));
    return R;
}

ThetaComplex reduce_mod_p(const ThetaComplex& C) {
    return map_theta_complex(C, GRing{C.R.p, 1, C.R.lcap}, &lmat_reduce_mod_p);
}

ThetaComplex lambda_zero(const ThetaComplex& C) {
    return map_theta_complex(C, GRing{C.R.p, C.R.k, 1}, &lmat_lambda_zero);
}

ThetaComplex colie_complex(long p, int n) {
    if (n < 1) throw Error("colie_complex: n >= 1");
    auto sys = build_witt_system(p, n);
    GRing R{p, 2, static_cast<int>(p)};
    ThetaComplex C;
    C.R = R;
    C.deg_min = -1;
    C.ranks = {n, n};
    LMat D(R, n, n);
    for (int i = 0; i < n; ++i) {
        // linear part of F_i gives the dF column for dS_i
        QSeries lin = sys->frobenius_polys[i].linear_part();
        for (int j = 0; j <= n; ++j) {
            Rational c = lin.linear_coefficient(j);
            if (c.is_zero() || j >= n) continue;
            D.at(j, i) = D.at(j, i) + lconst(D.ctx, reduce_rational(c, p, 2).value());
        }
        // multiplicative lift of lam^{p-1}: subtract lam^{p^i (p-1)} dT_i
        long e = p - 1;
        for (int r = 0; r < i; ++r) e *= p;
        if (e < R.lcap) D.at(i, i) = D.at(i, i) - lmono(D.ctx, 1, static_cast<int>(e));
    }
    C.d = {D, LMat(R, 0, n)};
    C.theta = {LMat(R, n, n), LMat(R, n, n)};
    validate_theta_complex(C);
    return C;
}

void validate_zcomplex(const ZComplex& C) {
    const int len = C.degree_count();
    if (static_cast<int>(C.d.size()) != len) throw LengthMismatch("zcomplex: d count");
    for (int k = 0; k < len; ++k) {
        int trows = k + 1 < len ? C.ranks[k + 1] : 0;
        if (C.d[k].rows != trows || C.d[k].cols != C.ranks[k])
            throw LengthMismatch("zcomplex: d shape");
        if (k + 1 < len && !lmat_mul(C.d[k + 1], C.d[k]).is_zero())
            throw Error("zcomplex: d^2 != 0");
    }
}

ZComplex underlying(const ThetaComplex& C) {
    ZComplex Z;
    Z.R = C.R;
    Z.deg_min = C.deg_min;
    Z.ranks = C.ranks;
    Z.d = C.d;
    return Z;
}

ZComplex total_complex(const ThetaComplex& C) {
    validate_theta_complex(C);
    ZComplex T;
    T.R = C.R;
    T.deg_min = C.deg_min;
    const int len = C.degree_count();
    auto rank_c = [&](int k) { return (k < 0 || k >= len) ? 0 : C.ranks[k]; };
    auto d_c = [&](int k) -> LMat {
        if (k < 0 || k >= len) return LMat(C.R, rank_c(k + 1), 0);
        return C.d[k];
    };
    auto th_c = [&](int k) -> LMat {
        if (k < 0 || k >= len) return LMat(C.R, 0, 0);
        return C.theta[k];
    };
    for (int k = 0; k <= len; ++k) T.ranks.push_back(rank_c(k) + rank_c(k - 1));
    for (int k = 0; k <= len; ++k) {
        int sx = rank_c(k), sy = rank_c(k - 1);
        int tx = rank_c(k + 1), ty = rank_c(k);
        LMat D(C.R, tx + ty, sx + sy);
        LMat dk = d_c(k), dk1 = d_c(k - 1), th = th_c(k);
        for (int i = 0; i < tx; ++i)
            for (int j = 0; j < sx; ++j) D.at(i, j) = dk.at(i, j);
        for (int i = 0; i < ty; ++i)
            for (int j = 0; j < sx; ++j) D.at(tx + i, j) = th.at(i, j);
        for (int i = 0; i < ty; ++i)
            for (int j = 0; j < sy; ++j) D.at(tx + i, sx + j) = -dk1.at(i, j);
        T.d.push_back(std::move(D));
    }
    validate_zcomplex(T);
    return T;
}

ThetaComplex dual_complex(const ThetaComplex& C) {
    validate_theta_complex(C);
    ThetaComplex D;
    D.R = C.R;
    const int len = C.degree_count();
    int cmax = C.deg_min + len - 1;
    D.deg_min = -cmax;
    for (int k = 0; k < len; ++k) {
        int cidx = len - 1 - k;  // dual degree -cmax+k holds the dual of C^{cmax-k}
        D.ranks.push_back(C.ranks[cidx]);
        D.theta.push_back(lmat_transpose(C.theta[cidx]));
    }
    for (int k = 0; k < len; ++k) {
        int dual_deg = D.deg_min + k;
        // delta_k(f) = -(-1)^{dual_deg} f o d with d: C^{cmax-k-1} -> C^{cmax-k}
        if (k + 1 < len) {
            LMat t = lmat_transpose(C.d[len - 2 - k]);
            bool negate = (dual_deg % 2 == 0);
            D.d.push_back(negate ? lmat_neg(t) : t);
        } else {
            D.d.push_back(LMat(C.R, 0, D.ranks[k]));
        }
    }
    validate_theta_complex(D);
    return D;
}

/* ---- cocycles, Bocksteins, classes ---- */

static LMat zc_d(const ZComplex& C, int deg, const LMat& v) {
    int k = deg - C.deg_min;
    if (k < 0 || k >= C.degree_count()) throw Error("zc_d: degree out of range");
    return lmat_mul(C.d[k], v);
}

bool is_cocycle(const ZComplex& C, int deg, const LMat& v) {
    return zc_d(C, deg, v).is_zero();
}

static ZComplex zc_reduce_mod_p(const ZComplex& C) {
    ZComplex R;
    R.R = GRing{C.R.p, 1, C.R.lcap};
    R.deg_min = C.deg_min;
    R.ranks = C.ranks;
    for (const auto& m : C.d) R.d.push_back(lmat_reduce_mod_p(m));
    return R;
}

LMat bockstein_cocycle(const ZComplex& C2, int deg, const LMat& z) {
    if (C2.R.k != 2) throw Error("bockstein: complex must live over k = 2");
    if (!(z.R == GRing{C2.R.p, 1, C2.R.lcap}))
        throw RingMismatch("bockstein: cocycle must live over the mod-p reduction");
    ZComplex C1 = zc_reduce_mod_p(C2);
    if (!is_cocycle(C1, deg, z)) throw LiftNotCocycle("bockstein: input is not a cocycle mod p");
    LMat lift = lmat_lift(z, C2.R);
    LMat dz = zc_d(C2, deg, lift);
    return lmat_divide_by_p(dz);
}

bool bockstein_lift_independent(const ZComplex& C2, int deg, const LMat& z, SplitMix64& rng,
                                int samples) {
    LMat base = bockstein_cocycle(C2, deg, z);
    ZComplex C1 = zc_reduce_mod_p(C2);
    for (int s = 0; s < samples; ++s) {
        // alternative lift: add p * w for random w
        LMat lift = lmat_lift(z, C2.R);
        for (auto& entry : lift.a) {
            long r = rng.mod(C2.R.p);
            if (r) entry += lconst(lift.ctx, r * C2.R.p);
        }
        LMat alt = lmat_divide_by_p(zc_d(C2, deg, lift));
        if (!classes_equal(C1, deg + 1, base, alt)) return false;
    }
    return true;
}

bool classes_equal(const ZComplex& C1, int deg, const LMat& u, const LMat& v) {
    if (C1.R.k != 1) throw Error("classes_equal: mod-p complex required");
    int k = deg - C1.deg_min;
    LMat diff = lmat_sub(u, v);
    FpMat dv = lmat_fp_expand(diff);
    if (dv.is_zero()) return true;
    if (k == 0) return false;
    FpMat im = fp_column_space(lmat_fp_expand(C1.d[k - 1]));
    return fp_in_span(im, dv);
}

FpMat cohomology_reps(const ZComplex& C1, int deg) {
    if (C1.R.k != 1) throw Error("cohomology_reps: mod-p complex required");
    int k = deg - C1.deg_min;
    FpMat dk = lmat_fp_expand(C1.d[k]);
    FpMat Z = fp_kernel(dk);
    FpMat B = k > 0 ? fp_column_space(lmat_fp_expand(C1.d[k - 1]))
                    : FpMat(C1.R.p, Z.rows, 0);
    return fp_quotient_reps(Z, B);
}

/* ---- ext table and the deformation class ---- */

ExtTable ext_table(long p, int n) {
    ExtTable t;
    t.p = p;
    t.n = n;
    ThetaComplex colie = colie_complex(p, n);
    ThetaComplex base = lambda_zero(reduce_mod_p(colie));  // mod (p, lam)
    t.reduced_d_zero = base.d[0].is_zero();
    ThetaComplex dual = dual_complex(base);
    ZComplex tot = total_complex(dual);
    // degrees 0,1,2 with ranks n, 2n, n and zero differential
    for (int k = 0; k < tot.degree_count(); ++k) {
        if (!tot.d[k].is_zero()) t.reduced_d_zero = false;
    }
    t.ranks = tot.ranks;
    t.basis_labels.resize(3);
    for (int i = 0; i < n; ++i) t.basis_labels[0].push_back("dT" + std::to_string(i) + "^");
    for (int i = 0; i < n; ++i) t.basis_labels[1].push_back("dS" + std::to_string(i) + "^");
    for (int i = 0; i < n; ++i) t.basis_labels[1].push_back("tau dT" + std::to_string(i) + "^");
    for (int i = 0; i < n; ++i) t.basis_labels[2].push_back("tau dS" + std::to_string(i) + "^");
    // dual-basis pairing: the dual construction pairs coordinatewise
    t.pairing_ok = dual.ranks[0] == n && dual.ranks[1] == n;
    // the dual differential must be minus the transpose of the original
    LMat expect = lmat_neg(lmat_transpose(base.d[0]));
    t.pairing_ok = t.pairing_ok && (dual.d[0] == expect);
    return t;
}

Zq tau_connecting_value(const GRing& R) {
    ThetaModule J = jordan_tau_module(R);
    // lift of the quotient generator e_0; theta lands in the sub spanned by e_1
    LMat e0(R, 2, 1);
    e0.at(0, 0) = lconst(e0.ctx, 1);
    LMat im = lmat_mul(J.theta, e0);
    if (!im.at(0, 0).is_zero()) throw Error("tau: image escaped the submodule");
    return im.at(1, 0).constant_term();
}

bool deformation_class_check(long p, int n) {
    if (n < 2) throw Error("deformation_class_check: n >= 2 required for dT_1");
    ThetaComplex colie0 = lambda_zero(colie_complex(p, n));  // over Z/p^2, lam = 0
    ThetaComplex dual2 = dual_complex(colie0);               // degrees 0, 1
    ZComplex tot2 = total_complex(dual2);                    // degrees 0, 1, 2 over k = 2
    ZComplex tot1 = zc_reduce_mod_p(tot2);

    // tau dT_1^: the tau slot of T^1 = dual^1 + dual^0 holds the dual^0 part
    LMat z = LMat(GRing{p, 1, 1}, tot1.ranks[1], 1);
    z.at(n + 1, 0) = lconst(z.ctx, 1);  // dual^1 block has rank n; entry n+1 is dT_1^
    LMat bock = bockstein_cocycle(tot2, 1, z);

    LMat target(GRing{p, 1, 1}, tot1.ranks[2], 1);
    target.at(0, 0) = lconst(target.ctx, 1);  // T^2 = dual^1 tau-slot; entry 0 is tau dS_0^
    if (!classes_equal(tot1, 2, bock, target)) return false;

    // Bock(dT_{i+1}^) = -dS_i^ in the dual complex itself
    ZComplex dual_u = underlying(dual2);
    for (int i = 0; i + 1 < n; ++i) {
        LMat zz = LMat(GRing{p, 1, 1}, n, 1);
        zz.at(i + 1, 0) = lconst(zz.ctx, 1);
        LMat b = bockstein_cocycle(dual_u, 0, zz);
        LMat expect(GRing{p, 1, 1}, n, 1);
        expect.at(i, 0) = lconst(expect.ctx, p - 1);
        if (!classes_equal(zc_reduce_mod_p(dual_u), 1, b, expect)) return false;
    }

    // Bock(tau) = 0 on the trivial module's total complex
    {
        ThetaComplex triv;
        triv.R = GRing{p, 2, 1};
        triv.deg_min = 0;
        triv.ranks = {1};
        triv.d = {LMat(triv.R, 0, 1)};
        triv.theta = {LMat(triv.R, 1, 1)};
        ZComplex tot = total_complex(triv);
        LMat tau = LMat(GRing{p, 1, 1}, 1, 1);
        tau.at(0, 0) = lconst(tau.ctx, 1);
        LMat b = bockstein_cocycle(tot, 1, tau);
        if (!b.is_zero()) return false;
    }
    return true;
}

/* ---- Leibniz harness ---- */

/* random invertible pair over Z/p^k built from elementary operations */
static std::pair<LMat, LMat> random_invertible(const GRing& R, int nn, SplitMix64& rng) {
    LMat g = LMat::identity(R, nn);
    LMat ginv = LMat::identity(R, nn);
    long q = 1;
    for (int i = 0; i < R.k; ++i) q *= R.p;
    int ops = 2 * nn * nn;
    for (int o = 0; o < ops; ++o) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(nn)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(nn)));
        if (i == j) continue;
        long c = rng.mod(q);
        if (!c) continue;
        // row_i += c row_j on g; inverse op on ginv from the right
        for (int col = 0; col < nn; ++col)
            g.at(i, col) = g.at(i, col) + g.at(j, col) * lconst(g.ctx, c);
        for (int row = 0; row < nn; ++row)
            ginv.at(row, j) = ginv.at(row, j) - ginv.at(row, i) * lconst(g.ctx, c);
    }
    return {g, ginv};
}

ZComplex random_zp2_complex(long p, SplitMix64& rng) {
    GRing R{p, 2, 1};
    ZComplex C;
    C.R = R;
    C.deg_min = 0;
    const int len = 3;
    C.ranks.assign(len, 0);
    struct Piece {
        int deg, src, tgt;
        long u;
    };
    std::vector<Piece> pieces;
    auto add = [&](int k) { return C.ranks[k]++; };
    int budget = 3 + static_cast<int>(rng.below(4));
    while (budget > 0) {
        std::vector<int> pair_ok, single_ok;
        for (int k = 0; k < len; ++k) {
            if (C.ranks[k] < 3) single_ok.push_back(k);
            if (k + 1 < len && C.ranks[k] < 3 && C.ranks[k + 1] < 3) pair_ok.push_back(k);
        }
        if (budget >= 2 && !pair_ok.empty() && rng.below(3) != 0) {
            int k = pair_ok[rng.below(pair_ok.size())];
            Piece pc;
            pc.deg = k;
            pc.src = add(k);
            pc.tgt = add(k + 1);
            pc.u = rng.below(2) ? 1 : p;  // iso piece or multiplication-by-p piece
            pieces.push_back(pc);
            budget -= 2;
        } else if (!single_ok.empty()) {
            add(single_ok[rng.below(single_ok.size())]);
            budget -= 1;
        } else {
            break;
        }
    }
    for (int k = 0; k < len; ++k) {
        int rows = k + 1 < len ? C.ranks[k + 1] : 0;
        C.d.emplace_back(R, rows, C.ranks[k]);
    }
    for (const auto& pc : pieces)
        C.d[pc.deg].at(pc.tgt, pc.src) = lconst(C.d[pc.deg].ctx, pc.u);
    // conjugate by random invertible changes of basis
    std::vector<LMat> g, ginv;
    for (int k = 0; k < len; ++k) {
        auto [gk, gki] = random_invertible(R, C.ranks[k], rng);
        g.push_back(gk);
        ginv.push_back(gki);
    }
    for (int k = 0; k + 1 < len; ++k) C.d[k] = lmat_mul(g[k + 1], lmat_mul(C.d[k], ginv[k]));
    validate_zcomplex(C);
    return C;
}

/* block offsets of (x) at total degree k: list of (iA, jB, offset, size) */
static std::vector<std::array<int, 4>> tensor_blocks(const ZComplex& A, const ZComplex& B,
                                                     int k) {
    std::vector<std::array<int, 4>> out;
    int off = 0;
    for (int i = 0; i < A.degree_count(); ++i) {
        int j = k - (A.deg_min + i) - B.deg_min;
        if (j < 0 || j >= B.degree_count()) continue;
        int sz = A.ranks[i] * B.ranks[j];
        if (sz > 0) out.push_back({i, j, off, sz});
        off += sz;
    }
    return out;
}

ZComplex tensor_complex(const ZComplex& A, const ZComplex& B) {
    if (!(A.R == B.R)) throw RingMismatch("tensor_complex: rings differ");
    ZComplex T;
    T.R = A.R;
    T.deg_min = A.deg_min + B.deg_min;
    int len = A.degree_count() + B.degree_count() - 1;
    for (int k = 0; k < len; ++k) {
        int sz = 0;
        for (int i = 0; i < A.degree_count(); ++i) {
            int j = (T.deg_min + k) - (A.deg_min + i) - B.deg_min;
            if (j >= 0 && j < B.degree_count()) sz += A.ranks[i] * B.ranks[j];
        }
        T.ranks.push_back(sz);
    }
    for (int k = 0; k < len; ++k) {
        int rows = k + 1 < len ? T.ranks[k + 1] : 0;
        LMat D(T.R, rows, T.ranks[k]);
        auto src = tensor_blocks(A, B, T.deg_min + k);
        auto tgt = tensor_blocks(A, B, T.deg_min + k + 1);
        auto tgt_off = [&](int i, int j) -> int {
            for (auto& b : tgt)
                if (b[0] == i && b[1] == j) return b[2];
            return -1;
        };
        for (auto& blk : src) {
            int i = blk[0], j = blk[1], off = blk[2];
            int ra = A.ranks[i], rb = B.ranks[j];
            // d_A (x) 1
            if (i + 1 < A.degree_count() && A.ranks[i + 1] > 0) {
                int to = tgt_off(i + 1, j);
                if (to >= 0) {
                    const LMat& dA = A.d[i];
                    for (int r = 0; r < dA.rows; ++r)
                        for (int c = 0; c < ra; ++c) {
                            if (dA.at(r, c).is_zero()) continue;
                            for (int y = 0; y < rb; ++y)
                                D.at(to + r * rb + y, off + c * rb + y) = dA.at(r, c);
                        }
                }
            }
            // (-1)^{deg_A} 1 (x) d_B
            if (j + 1 < B.degree_count() && B.ranks[j + 1] > 0) {
                int to = tgt_off(i, j + 1);
                if (to >= 0) {
                    const LMat& dB = B.d[j];
                    bool neg = ((A.deg_min + i) % 2 + 2) % 2 == 1;
                    int rb2 = B.ranks[j + 1];
                    for (int x = 0; x < ra; ++x)
                        for (int r = 0; r < rb2; ++r)
                            for (int c = 0; c < rb; ++c) {
                                if (dB.at(r, c).is_zero()) continue;
                                LSeries v = dB.at(r, c);
                                D.at(to + x * rb2 + r, off + x * rb + c) = neg ? -v : v;
                            }
                }
            }
        }
        T.d.push_back(std::move(D));
    }
    validate_zcomplex(T);
    return T;
}

/* blocks of Hom(A, B) at degree k: (jA, offset, size); flat index r_B * ra + c_A */
static std::vector<std::array<int, 3>> hom_blocks(const ZComplex& A, const ZComplex& B, int k) {
    std::vector<std::array<int, 3>> out;
    int off = 0;
    for (int j = 0; j < A.degree_count(); ++j) {
        int bidx = (A.deg_min + j) + k - B.deg_min;
        if (bidx < 0 || bidx >= B.degree_count()) continue;
        int sz = A.ranks[j] * B.ranks[bidx];
        if (sz > 0) out.push_back({j, off, sz});
        off += sz;
    }
    return out;
}

ZComplex hom_complex(const ZComplex& A, const ZComplex& B) {
    if (!(A.R == B.R)) throw RingMismatch("hom_complex: rings differ");
    ZComplex H;
    H.R = A.R;
    int amax = A.deg_min + A.degree_count() - 1;
    int bmax = B.deg_min + B.degree_count() - 1;
    H.deg_min = B.deg_min - amax;
    int len = (bmax - A.deg_min) - H.deg_min + 1;
    for (int k = 0; k < len; ++k) {
        int sz = 0;
        for (auto& b : hom_blocks(A, B, H.deg_min + k)) sz += b[2];
        H.ranks.push_back(sz);
    }
    for (int k = 0; k < len; ++k) {
        int deg = H.deg_min + k;
        int rows = k + 1 < len ? H.ranks[k + 1] : 0;
        LMat D(H.R, rows, H.ranks[k]);
        auto src = hom_blocks(A, B, deg);
        auto tgt = hom_blocks(A, B, deg + 1);
        auto tgt_off = [&](int j) -> std::pair<int, int> {
            for (auto& b : tgt)
                if (b[0] == j) return {b[1], b[2]};
            return {-1, 0};
        };
        bool neg = ((deg % 2) + 2) % 2 == 1;  // -(-1)^k f o d_A term sign handling below
        for (auto& blk : src) {
            int j = blk[0], off = blk[1];
            int bidx = (A.deg_min + j) + deg - B.deg_min;
            int ra = A.ranks[j], rb = B.ranks[bidx];
            // (d_B)_* : Hom(A^j, B^{j+k}) -> Hom(A^j, B^{j+k+1})
            if (bidx + 1 < B.degree_count() && B.ranks[bidx + 1] > 0) {
                auto [to, tsz] = tgt_off(j);
                if (to >= 0) {
                    (void)tsz;
                    const LMat& dB = B.d[bidx];
                    for (int r2 = 0; r2 < dB.rows; ++r2)
                        for (int rB = 0; rB < rb; ++rB) {
                            if (dB.at(r2, rB).is_zero()) continue;
                            for (int cA = 0; cA < ra; ++cA)
                                D.at(to + r2 * ra + cA, off + rB * ra + cA) = dB.at(r2, rB);
                        }
                }
            }
            // -(-1)^k (d_A)^* : Hom(A^j, B^{j+k}) -> Hom(A^{j-1}, B^{j-1+k+1})
            if (j - 1 >= 0 && A.ranks[j - 1] > 0) {
                auto [to, tsz] = tgt_off(j - 1);
                if (to >= 0) {
                    (void)tsz;
                    const LMat& dA = A.d[j - 1];
                    int ra1 = A.ranks[j - 1];
                    for (int rB = 0; rB < rb; ++rB)
                        for (int cA = 0; cA < ra; ++cA)
                            for (int c1 = 0; c1 < ra1; ++c1) {
                                if (dA.at(cA, c1).is_zero()) continue;
                                LSeries v = dA.at(cA, c1);
                                LSeries cur = D.at(to + rB * ra1 + c1, off + rB * ra + cA);
                                D.at(to + rB * ra1 + c1, off + rB * ra + cA) =
                                    neg ? cur + v : cur - v;
                            }
                }
            }
        }
        H.d.push_back(std::move(D));
    }
    validate_zcomplex(H);
    return H;
}

/* embed z (x) z' into the tensor complex */
static LMat tensor_embed(const ZComplex& A, const ZComplex& B, const ZComplex& T, int ia,
                         int jb, const LMat& za, const LMat& zb) {
    int deg = (A.deg_min + ia) + (B.deg_min + jb);
    int idx = deg - T.deg_min;
    if (idx < 0 || idx >= T.degree_count()) return LMat(T.R, 0, 1);
    LMat v(T.R, T.ranks[idx], 1);
    for (auto& blk : tensor_blocks(A, B, deg)) {
        if (blk[0] != ia || blk[1] != jb) continue;
        int rb = B.ranks[jb];
        for (int x = 0; x < A.ranks[ia]; ++x)
            for (int y = 0; y < rb; ++y) v.at(blk[2] + x * rb + y, 0) = za.at(x, 0) * zb.at(y, 0);
    }
    return v;
}

/* evaluate a Hom-complex vector at an A-vector in degree ia */
static LMat hom_eval(const ZComplex& A, const ZComplex& B, int k, const LMat& f, int ia,
                     const LMat& z) {
    int bidx = (A.deg_min + ia) + k - B.deg_min;
    LMat out(B.R, (bidx >= 0 && bidx < B.degree_count()) ? B.ranks[bidx] : 0, 1);
    if (bidx < 0 || bidx >= B.degree_count()) return out;
    for (auto& blk : hom_blocks(A, B, k)) {
        if (blk[0] != ia) continue;
        int ra = A.ranks[ia];
        for (int rB = 0; rB < out.rows; ++rB)
            for (int cA = 0; cA < ra; ++cA)
                out.at(rB, 0) += f.at(blk[1] + rB * ra + cA, 0) * z.at(cA, 0);
    }
    return out;
}

static LMat col_from_fp(const GRing& R, const FpMat& M, int c) {
    LMat v(GRing{R.p, 1, R.lcap}, M.rows, 1);
    for (int i = 0; i < M.rows; ++i)
        if (M.at(i, c)) v.at(i, 0) = lconst(v.ctx, M.at(i, c));
    return v;
}

LeibnizReport bockstein_leibniz_check(long p, int trials, std::uint64_t seed) {
    LeibnizReport rep;
    rep.p = p;
    rep.seed = seed;
    SplitMix64 rng(seed);
    while (rep.trials < trials) {
        ZComplex A = random_zp2_complex(p, rng);
        ZComplex B = random_zp2_complex(p, rng);
        ZComplex A1 = zc_reduce_mod_p(A), B1 = zc_reduce_mod_p(B);
        ZComplex T = tensor_complex(A, B);
        ZComplex T1 = zc_reduce_mod_p(T);
        ZComplex Hm = hom_complex(A, B);
        ZComplex Hm1 = zc_reduce_mod_p(Hm);
        bool counted = false;

        // tensor rule on products of cohomology classes
        for (int ia = 0; ia < A.degree_count(); ++ia) {
            FpMat ha = cohomology_reps(A1, A.deg_min + ia);
            if (ha.cols == 0) continue;
            for (int jb = 0; jb < B.degree_count(); ++jb) {
                FpMat hb = cohomology_reps(B1, B.deg_min + jb);
                if (hb.cols == 0) continue;
                for (int ca = 0; ca < ha.cols; ++ca)
                    for (int cb = 0; cb < hb.cols; ++cb) {
                        LMat za = col_from_fp(A.R, ha, ca);
                        LMat zb = col_from_fp(B.R, hb, cb);
                        int deg = A.deg_min + ia + B.deg_min + jb;
                        LMat zz = tensor_embed(A1, B1, T1, ia, jb, za, zb);
                        LMat lhs = bockstein_cocycle(T, deg, zz);
                        LMat ba = bockstein_cocycle(A, A.deg_min + ia, za);
                        LMat bb = bockstein_cocycle(B, B.deg_min + jb, zb);
                        LMat rhs = tensor_embed(A1, B1, T1, ia + 1, jb, ba, zb);
                        LMat second = tensor_embed(A1, B1, T1, ia, jb + 1, za, bb);
                        bool odd = ((A.deg_min + ia) % 2 + 2) % 2 == 1;
                        rhs = odd ? lmat_sub(rhs, second) : lmat_add(rhs, second);
                        counted = true;
                        if (!classes_equal(T1, deg + 1, lhs, rhs)) rep.failures++;
                    }
            }
        }

        // Hom rule, evaluated against cohomology of A
        for (int k = 0; k < Hm.degree_count(); ++k) {
            int deg = Hm.deg_min + k;
            FpMat hf = cohomology_reps(Hm1, deg);
            if (hf.cols == 0) continue;
            for (int cf = 0; cf < hf.cols; ++cf) {
                LMat f = col_from_fp(Hm.R, hf, cf);
                LMat bf = bockstein_cocycle(Hm, deg, f);
                for (int ia = 0; ia < A.degree_count(); ++ia) {
                    FpMat ha = cohomology_reps(A1, A.deg_min + ia);
                    for (int ca = 0; ca < ha.cols; ++ca) {
                        LMat z = col_from_fp(A.R, ha, ca);
                        int adeg = A.deg_min + ia;
                        int fzidx = adeg + deg - B.deg_min;
                        if (fzidx < 0 || fzidx >= B.degree_count()) continue;
                        int outdeg = adeg + deg + 1;
                        LMat lhs = hom_eval(A1, B1, deg + 1, bf, ia, z);
                        LMat fz = hom_eval(A1, B1, deg, f, ia, z);
                        LMat bfz = bockstein_cocycle(B, adeg + deg, fz);
                        LMat bz = bockstein_cocycle(A, adeg, z);
                        LMat fbz = hom_eval(A1, B1, deg, f, ia + 1, bz);
                        bool odd = ((deg % 2) + 2) % 2 == 1;
                        LMat rhs = odd ? lmat_add(bfz, fbz) : lmat_sub(bfz, fbz);
                        counted = true;
                        if (!classes_equal(B1, outdeg, lhs, rhs)) rep.failures++;
                    }
                }
            }
        }
        if (counted) rep.trials++;
    }
    return rep;
}

}  // namespace charp
