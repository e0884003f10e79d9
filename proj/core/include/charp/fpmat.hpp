#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charp/error.hpp"

namespace charp {

/*
 * Dense matrix over F_p for small p. Vectors are columns; a subspace is a
 * matrix whose columns span it. Everything here is plain Gaussian
 * elimination; the dimensions in this library never exceed a few dozen.
 */
struct FpMat {
    long p = 2;
    int rows = 0, cols = 0;
    std::vector<int> a;  // row-major, entries in [0, p)

    FpMat() = default;
    FpMat(long p_, int r, int c) : p(p_), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    int at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    void set(int i, int j, long v) {
        at(i, j) = static_cast<int>(((v % p) + p) % p);
    }

    static FpMat identity(long p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    FpMat col(int j) const {
        FpMat c(p, rows, 1);
        for (int i = 0; i < rows; ++i) c.at(i, 0) = at(i, j);
        return c;
    }

    bool is_zero() const {
        for (int v : a)
            if (v) return false;
        return true;
    }

    friend bool operator==(const FpMat&, const FpMat&) = default;
};

long fp_inv(long v, long p);

FpMat fp_add(const FpMat& A, const FpMat& B);
FpMat fp_sub(const FpMat& A, const FpMat& B);
FpMat fp_neg(const FpMat& A);
FpMat fp_mul(const FpMat& A, const FpMat& B);
FpMat fp_scale(const FpMat& A, long c);
FpMat fp_transpose(const FpMat& A);
FpMat fp_hstack(const FpMat& A, const FpMat& B);
FpMat fp_vstack(const FpMat& A, const FpMat& B);
FpMat fp_kronecker(const FpMat& A, const FpMat& B);
FpMat fp_pow(const FpMat& A, unsigned long e);

int fp_rank(FpMat A);

/* particular solution of A x = b, if any */
std::optional<FpMat> fp_solve(const FpMat& A, const FpMat& b);

/* columns form a basis of ker A */
FpMat fp_kernel(const FpMat& A);

/* column-space basis (subset of A's columns, echelon-reduced) */
FpMat fp_column_space(const FpMat& A);

/* is v in the column space of B */
bool fp_in_span(const FpMat& B, const FpMat& v);

/* basis of col(A) ∩ col(B) */
FpMat fp_intersect(const FpMat& A, const FpMat& B);

/* basis of {x : d x ∈ col(W)}; W may have zero columns */
FpMat fp_preimage(const FpMat& d, const FpMat& W);

/* basis of col(A) + col(B) */
FpMat fp_sum(const FpMat& A, const FpMat& B);

/*
 * Representatives for col(Z)/col(B) (B ⊆ Z assumed): columns of Z that
 * extend a basis of col(B) to one of col(Z).
 */
FpMat fp_quotient_reps(const FpMat& Z, const FpMat& B);

std::optional<FpMat> fp_inverse(const FpMat& A);

std::string fp_str(const FpMat& A);

}  // namespace charp
