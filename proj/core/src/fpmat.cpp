#include "charp/fpmat.hpp"

#include <sstream>

namespace charp {

long fp_inv(long v, long p) {
    v = ((v % p) + p) % p;
    if (v == 0) throw Error("fp_inv: zero");
    long r = 1, b = v;
    long e = p - 2;  // Fermat
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

static void check_same(const FpMat& A, const FpMat& B) {
    if (A.p != B.p) throw RingMismatch("FpMat: different primes");
}

FpMat fp_add(const FpMat& A, const FpMat& B) {
    check_same(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw LengthMismatch("fp_add: shapes");
    FpMat R(A.p, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = (A.a[i] + B.a[i]) % A.p;
    return R;
}

FpMat fp_sub(const FpMat& A, const FpMat& B) {
    check_same(A, B);
    if (A.rows != B.rows || A.cols != B.cols) throw LengthMismatch("fp_sub: shapes");
    FpMat R(A.p, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = (A.a[i] - B.a[i] + A.p) % A.p;
    return R;
}

FpMat fp_neg(const FpMat& A) {
    FpMat R(A.p, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = (A.p - A.a[i]) % A.p;
    return R;
}

FpMat fp_mul(const FpMat& A, const FpMat& B) {
    check_same(A, B);
    if (A.cols != B.rows) throw LengthMismatch("fp_mul: shapes");
    FpMat R(A.p, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            int aik = A.at(i, k);
            if (!aik) continue;
            for (int j = 0; j < B.cols; ++j)
                R.at(i, j) = static_cast<int>((R.at(i, j) + 1L * aik * B.at(k, j)) % A.p);
        }
    return R;
}

FpMat fp_scale(const FpMat& A, long c) {
    c = ((c % A.p) + A.p) % A.p;
    FpMat R(A.p, A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) R.a[i] = static_cast<int>(A.a[i] * c % A.p);
    return R;
}

FpMat fp_transpose(const FpMat& A) {
    FpMat R(A.p, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) R.at(j, i) = A.at(i, j);
    return R;
}

FpMat fp_hstack(const FpMat& A, const FpMat& B) {
    check_same(A, B);
    if (A.rows != B.rows) throw LengthMismatch("fp_hstack: rows");
    FpMat R(A.p, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) R.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) R.at(i, A.cols + j) = B.at(i, j);
    }
    return R;
}

FpMat fp_vstack(const FpMat& A, const FpMat& B) {
    check_same(A, B);
    if (A.cols != B.cols) throw LengthMismatch("fp_vstack: cols");
    FpMat R(A.p, A.rows + B.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) R.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) R.at(A.rows + i, j) = B.at(i, j);
    return R;
}

FpMat fp_kronecker(const FpMat& A, const FpMat& B) {
    check_same(A, B);
    FpMat R(A.p, A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            int aij = A.at(i, j);
            if (!aij) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    R.at(i * B.rows + k, j * B.cols + l) =
                        static_cast<int>(1L * aij * B.at(k, l) % A.p);
        }
    return R;
}

FpMat fp_pow(const FpMat& A, unsigned long e) {
    if (A.rows != A.cols) throw LengthMismatch("fp_pow: square matrix required");
    FpMat R = FpMat::identity(A.p, A.rows);
    FpMat B = A;
    while (e) {
        if (e & 1) R = fp_mul(R, B);
        B = fp_mul(B, B);
        e >>= 1;
    }
    return R;
}

/* row echelon in place; returns pivot columns */
static std::vector<int> echelon(FpMat& M) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < M.cols && r < M.rows; ++c) {
        int sel = -1;
        for (int i = r; i < M.rows; ++i)
            if (M.at(i, c)) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < M.cols; ++j) std::swap(M.at(sel, j), M.at(r, j));
        long inv = fp_inv(M.at(r, c), M.p);
        for (int j = 0; j < M.cols; ++j)
            M.at(r, j) = static_cast<int>(M.at(r, j) * inv % M.p);
        for (int i = 0; i < M.rows; ++i) {
            if (i == r || !M.at(i, c)) continue;
            long f = M.at(i, c);
            for (int j = 0; j < M.cols; ++j)
                M.at(i, j) = static_cast<int>(((M.at(i, j) - f * M.at(r, j)) % M.p + M.p) % M.p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int fp_rank(FpMat A) {
    return static_cast<int>(echelon(A).size());
}

std::optional<FpMat> fp_solve(const FpMat& A, const FpMat& b) {
    if (b.cols != 1 || b.rows != A.rows) throw LengthMismatch("fp_solve: shapes");
    FpMat M = fp_hstack(A, b);
    auto pivots = echelon(M);
    // inconsistent if the last column is a pivot
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    FpMat x(A.p, A.cols, 1);
    for (size_t r = 0; r < pivots.size(); ++r) x.at(pivots[r], 0) = M.at(static_cast<int>(r), A.cols);
    return x;
}

FpMat fp_kernel(const FpMat& A) {
    FpMat M = A;
    auto pivots = echelon(M);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMat K(A.p, A.cols, static_cast<int>(free_cols.size()));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        K.at(fc, static_cast<int>(f)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r) {
            int val = M.at(static_cast<int>(r), fc);
            K.at(pivots[r], static_cast<int>(f)) = static_cast<int>((A.p - val) % A.p);
        }
    }
    return K;
}

FpMat fp_column_space(const FpMat& A) {
    FpMat M = A;
    auto pivots = echelon(M);
    FpMat B(A.p, A.rows, static_cast<int>(pivots.size()));
    for (size_t j = 0; j < pivots.size(); ++j)
        for (int i = 0; i < A.rows; ++i) B.at(i, static_cast<int>(j)) = A.at(i, pivots[j]);
    return B;
}

bool fp_in_span(const FpMat& B, const FpMat& v) {
    return fp_solve(B, v).has_value();
}

FpMat fp_intersect(const FpMat& A, const FpMat& B) {
    if (A.cols == 0 || B.cols == 0) return FpMat(A.p, A.rows, 0);
    FpMat M = fp_hstack(A, fp_neg(B));
    FpMat K = fp_kernel(M);  // (x, y) with A x = B y
    FpMat gens(A.p, A.rows, K.cols);
    for (int c = 0; c < K.cols; ++c)
        for (int i = 0; i < A.rows; ++i) {
            long s = 0;
            for (int j = 0; j < A.cols; ++j) s += 1L * A.at(i, j) * K.at(j, c);
            gens.at(i, c) = static_cast<int>(s % A.p);
        }
    return fp_column_space(gens);
}

FpMat fp_preimage(const FpMat& d, const FpMat& W) {
    if (W.cols == 0) return fp_kernel(d);
    FpMat M = fp_hstack(d, fp_neg(W));
    FpMat K = fp_kernel(M);
    FpMat X(d.p, d.cols, K.cols);
    for (int c = 0; c < K.cols; ++c)
        for (int i = 0; i < d.cols; ++i) X.at(i, c) = K.at(i, c);
    return fp_column_space(X);
}

FpMat fp_sum(const FpMat& A, const FpMat& B) {
    if (A.cols == 0) return fp_column_space(B);
    if (B.cols == 0) return fp_column_space(A);
    return fp_column_space(fp_hstack(A, B));
}

FpMat fp_quotient_reps(const FpMat& Z, const FpMat& B) {
    FpMat acc = fp_column_space(B);
    FpMat reps(Z.p, Z.rows, 0);
    for (int c = 0; c < Z.cols; ++c) {
        FpMat v = Z.col(c);
        if (acc.cols == 0 ? !v.is_zero() : !fp_in_span(acc, v)) {
            reps = fp_hstack(reps, v);
            acc = acc.cols == 0 ? v : fp_hstack(acc, v);
        }
    }
    return reps;
}

std::optional<FpMat> fp_inverse(const FpMat& A) {
    if (A.rows != A.cols) return std::nullopt;
    FpMat M = fp_hstack(A, FpMat::identity(A.p, A.rows));
    auto pivots = echelon(M);
    if (static_cast<int>(pivots.size()) != A.rows) return std::nullopt;
    for (int r = 0; r < A.rows; ++r)
        if (pivots[r] != r) return std::nullopt;
    FpMat R(A.p, A.rows, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.rows; ++j) R.at(i, j) = M.at(i, A.rows + j);
    return R;
}

std::string fp_str(const FpMat& A) {
    std::ostringstream os;
    for (int i = 0; i < A.rows; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < A.cols; ++j) os << (j ? " " : "") << A.at(i, j);
    }
    os << "]";
    return os.str();
}

}  // namespace charp
