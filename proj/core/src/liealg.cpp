#include "charp/liealg.hpp"

#include <algorithm>
#include <numeric>
#include <functional>
#include <sstream>

namespace charp {

static void check_arity(long p) {
    if (p != 2 && p != 3 && p != 5)
        throw ArityTooLarge("arity cap: p must be one of 2, 3, 5 (got " + std::to_string(p) +
                            ")");
}

static std::vector<std::vector<int>> all_perms(int n, bool fix_first) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        if (!fix_first || base[0] == 1) out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

std::string lie_str(const MultilinearLie& e) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [perm, c] : e.coeffs) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        for (size_t i = 0; i + 1 < perm.size(); ++i) os << "[";
        os << "X" << perm[0];
        for (size_t i = 1; i < perm.size(); ++i) os << ",X" << perm[i] << "]";
    }
    return first ? "0" : os.str();
}

std::string assoc_str(const MultilinearAssoc& a) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [word, c] : a.coeffs) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        for (size_t i = 0; i < word.size(); ++i) os << (i ? " X" : "X") << word[i];
    }
    return first ? "0" : os.str();
}

MultilinearLie w_element(long p) {
    check_arity(p);
    MultilinearLie w;
    w.p = p;
    w.arity = static_cast<int>(p);
    for (auto& s : all_perms(static_cast<int>(p), true)) w.coeffs[s] = 1;
    return w;
}

/* expansion of the left-normed bracket on a letter sequence */
static std::map<std::vector<int>, int> expand_left_normed(const std::vector<int>& letters,
                                                          long p) {
    std::map<std::vector<int>, int> acc;
    acc[{letters[0]}] = 1;
    for (size_t i = 1; i < letters.size(); ++i) {
        std::map<std::vector<int>, int> next;
        for (const auto& [word, c] : acc) {
            std::vector<int> right = word;
            right.push_back(letters[i]);
            std::vector<int> left;
            left.push_back(letters[i]);
            left.insert(left.end(), word.begin(), word.end());
            next[right] = static_cast<int>(((next[right] + c) % p + p) % p);
            next[left] = static_cast<int>(((next[left] - c) % p + p) % p);
        }
        for (auto it = next.begin(); it != next.end();)
            it = it->second == 0 ? next.erase(it) : std::next(it);
        acc = std::move(next);
    }
    return acc;
}

MultilinearAssoc lie_to_assoc(const MultilinearLie& e) {
    MultilinearAssoc a;
    a.p = e.p;
    a.arity = e.arity;
    for (const auto& [perm, c] : e.coeffs) {
        for (const auto& [word, c2] : expand_left_normed(perm, e.p)) {
            int v = static_cast<int>((a.coeffs[word] + 1L * c * c2) % e.p);
            if (v == 0)
                a.coeffs.erase(word);
            else
                a.coeffs[word] = v;
        }
    }
    return a;
}

MultilinearAssoc norm_word(long p) {
    check_arity(p);
    MultilinearAssoc a;
    a.p = p;
    a.arity = static_cast<int>(p);
    for (auto& s : all_perms(static_cast<int>(p), false)) a.coeffs[s] = 1;
    return a;
}

int lie_in_assoc_rank(long p) {
    check_arity(p);
    auto basis = all_perms(static_cast<int>(p), true);
    auto words = all_perms(static_cast<int>(p), false);
    std::map<std::vector<int>, int> word_index;
    for (size_t i = 0; i < words.size(); ++i) word_index[words[i]] = static_cast<int>(i);
    FpMat M(p, static_cast<int>(words.size()), static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j) {
        MultilinearLie e;
        e.p = p;
        e.arity = static_cast<int>(p);
        e.coeffs[basis[j]] = 1;
        for (const auto& [word, c] : lie_to_assoc(e).coeffs)
            M.at(word_index[word], static_cast<int>(j)) = c;
    }
    return fp_rank(M);
}

/* ---- Jacobson ---- */

/* expand ad(z_1)...ad(z_m)(x) into associative words over {0 = x, 1 = y} */
static std::map<std::vector<int>, long> expand_ad_word(const std::vector<int>& zs) {
    std::map<std::vector<int>, long> acc;
    acc[{0}] = 1;  // innermost x
    for (auto it = zs.rbegin(); it != zs.rend(); ++it) {
        std::map<std::vector<int>, long> next;
        for (const auto& [word, c] : acc) {
            std::vector<int> left;
            left.push_back(*it);
            left.insert(left.end(), word.begin(), word.end());
            std::vector<int> right = word;
            right.push_back(*it);
            next[left] += c;
            next[right] -= c;
        }
        acc = std::move(next);
    }
    return acc;
}

JacobsonL jacobson_L(long p) {
    check_arity(p);
    JacobsonL L;
    L.p = p;
    // i s_i(x,y) = [t^{i-1}] ad(tx+y)^{p-1}(x): the z-words with i-1 letters x
    for (int i = 1; i <= static_cast<int>(p) - 1; ++i) {
        long inv = 1;  // inverse of i mod p
        for (long v = 1; v < p; ++v)
            if (v * i % p == 1) inv = v;
        std::vector<int> word(static_cast<size_t>(p - 1), 1);
        // all words with exactly i-1 zeros (x's)
        std::vector<int> idx(static_cast<size_t>(i - 1));
        std::function<void(int, int)> gen = [&](int start, int need) {
            if (need == 0) {
                std::vector<int> zs(static_cast<size_t>(p - 1), 1);
                for (int q : idx) zs[q] = 0;
                L.terms.emplace_back(static_cast<int>(inv), zs);
                return;
            }
            for (int q = start; q <= static_cast<int>(p) - 1 - need; ++q) {
                idx[static_cast<size_t>(i - 1 - need)] = q;
                gen(q + 1, need - 1);
            }
        };
        gen(0, i - 1);
    }

    // certification: (x+y)^p - x^p - y^p - L = 0 in the free associative algebra
    std::map<std::vector<int>, long> total;
    for (const auto& [c, zs] : L.terms)
        for (const auto& [word, c2] : expand_ad_word(zs)) total[word] += c * c2;
    // subtract the mixed words of (x+y)^p (each with coefficient 1)
    std::vector<int> word(static_cast<size_t>(p), 0);
    for (long mask = 1; mask + 1 < (1L << p); ++mask) {
        for (int b = 0; b < static_cast<int>(p); ++b) word[static_cast<size_t>(b)] = (mask >> b) & 1;
        total[word] -= 1;
    }
    for (const auto& [wrd, c] : total)
        if (((c % p) + p) % p != 0)
            throw CertificationFailure("Jacobson polynomial failed associative expansion");
    return L;
}

std::string jacobson_str(const JacobsonL& L) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, zs] : L.terms) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        for (int z : zs) os << "[" << (z ? "y" : "x") << ",";
        os << "x";
        for (size_t i = 0; i < zs.size(); ++i) os << "]";
    }
    return os.str();
}

FpMat matrix_commutator(const FpMat& a, const FpMat& b) {
    return fp_sub(fp_mul(a, b), fp_mul(b, a));
}

FpMat eval_jacobson(const JacobsonL& L, const FpMat& x, const FpMat& y) {
    FpMat acc(x.p, x.rows, x.cols);
    for (const auto& [c, zs] : L.terms) {
        FpMat t = x;
        for (auto it = zs.rbegin(); it != zs.rend(); ++it)
            t = matrix_commutator(*it ? y : x, t);
        acc = fp_add(acc, fp_scale(t, c));
    }
    return acc;
}

FpMat ad_matrix(const FpMat& x) {
    int n = x.rows;
    FpMat M(x.p, n * n, n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            FpMat E(x.p, n, n);
            E.at(a, b) = 1;
            FpMat c = matrix_commutator(x, E);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M.at(i * n + j, a * n + b) = c.at(i, j);
        }
    return M;
}

static FpMat random_matrix(long p, int n, SplitMix64& rng) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<int>(rng.mod(p));
    return m;
}

TrialReport restricted_checks(int n, long p, int trials, std::uint64_t seed) {
    check_arity(p);
    JacobsonL L = jacobson_L(p);
    TrialReport rep;
    rep.p = p;
    rep.dim = n;
    rep.trials = trials;
    rep.seed = seed;
    SplitMix64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        FpMat x = random_matrix(p, n, rng);
        FpMat y = random_matrix(p, n, rng);
        long lam = rng.mod(p);

        FpMat xp = fp_pow(x, static_cast<unsigned long>(p));
        FpMat yp = fp_pow(y, static_cast<unsigned long>(p));

        // (lam x)^[p] = lam^p x^[p]
        long lam_p = 1;
        for (long i = 0; i < p; ++i) lam_p = lam_p * lam % p;
        if (!(fp_pow(fp_scale(x, lam), static_cast<unsigned long>(p)) ==
              fp_scale(xp, lam_p))) {
            rep.failures++;
            rep.notes.push_back("scaling axiom failed at trial " + std::to_string(t));
            continue;
        }
        // (x+y)^[p] = x^[p] + y^[p] + L(x,y)
        FpMat lhs = fp_pow(fp_add(x, y), static_cast<unsigned long>(p));
        FpMat rhs = fp_add(fp_add(xp, yp), eval_jacobson(L, x, y));
        if (!(lhs == rhs)) {
            rep.failures++;
            rep.notes.push_back("Jacobson sum axiom failed at trial " + std::to_string(t));
            continue;
        }
        // ad(x^[p]) = ad(x)^p as operators
        if (!(ad_matrix(xp) == fp_pow(ad_matrix(x), static_cast<unsigned long>(p)))) {
            rep.failures++;
            rep.notes.push_back("ad power axiom failed at trial " + std::to_string(t));
        }
    }
    return rep;
}

/* ---- Gamma^p ---- */

/* distinct arrangements of a multiset of matrix indices */
static std::vector<std::vector<int>> distinct_arrangements(std::vector<int> multiset) {
    std::sort(multiset.begin(), multiset.end());
    std::vector<std::vector<int>> out;
    do {
        out.push_back(multiset);
    } while (std::next_permutation(multiset.begin(), multiset.end()));
    return out;
}

static FpMat product_of(const std::vector<FpMat>& ms, const std::vector<int>& order) {
    FpMat acc = ms[static_cast<size_t>(order[0])];
    for (size_t i = 1; i < order.size(); ++i) acc = fp_mul(acc, ms[static_cast<size_t>(order[i])]);
    return acc;
}

/* right-nested ad(z_1)...ad(z_p)(y) */
static FpMat nested_bracket(const std::vector<FpMat>& ms, const std::vector<int>& order,
                            const FpMat& y) {
    FpMat acc = y;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        acc = matrix_commutator(ms[static_cast<size_t>(*it)], acc);
    return acc;
}

/* left-normed [[x_{s1},x_{s2}],...,x_{sp}] */
static FpMat left_normed_eval(const std::vector<FpMat>& ms, const std::vector<int>& perm) {
    FpMat acc = ms[static_cast<size_t>(perm[0] - 1)];
    for (size_t i = 1; i < perm.size(); ++i)
        acc = matrix_commutator(acc, ms[static_cast<size_t>(perm[i] - 1)]);
    return acc;
}

TrialReport gamma_p_verschiebung_checks(int n, long p, int trials, std::uint64_t seed) {
    if (p != 2 && p != 3) throw ArityTooLarge("gamma_p checks support p in {2, 3}");
    if (n > 3) throw ArityTooLarge("gamma_p checks support n <= 3");
    TrialReport rep;
    rep.p = p;
    rep.dim = n;
    rep.seed = seed;
    SplitMix64 rng(seed);
    const int pp = static_cast<int>(p);

    // diagram 1 on random Sym^p spanning tuples (with occasional repeats)
    auto perms = all_perms(pp, false);
    auto w_perms = all_perms(pp, true);
    for (int t = 0; t < trials; ++t) {
        std::vector<FpMat> xs;
        for (int i = 0; i < pp; ++i) xs.push_back(random_matrix(p, n, rng));
        if (rng.below(4) == 0 && pp >= 2) xs[1] = xs[0];  // exercise repeated entries
        // V(N(x_1...x_p)) = sum over all permutations of the product
        FpMat vn(p, n, n);
        for (const auto& s : perms) {
            std::vector<int> ord(s.size());
            for (size_t i = 0; i < s.size(); ++i) ord[i] = s[i] - 1;
            vn = fp_add(vn, product_of(xs, ord));
        }
        // w-evaluation
        FpMat wv(p, n, n);
        for (const auto& s : w_perms) wv = fp_add(wv, left_normed_eval(xs, s));
        rep.trials++;
        if (!(vn == wv)) {
            rep.failures++;
            rep.notes.push_back("diagram 1 failed at trial " + std::to_string(t));
        }
    }

    // diagram 2 on the full orbit-sum basis of Gamma^p(gl_n), with random y
    std::vector<FpMat> basis;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            FpMat E(p, n, n);
            E.at(a, b) = 1;
            basis.push_back(E);
        }
    const int nb = static_cast<int>(basis.size());
    std::vector<std::vector<int>> multisets;
    std::vector<int> cur(static_cast<size_t>(pp));
    std::function<void(int, int)> gen = [&](int start, int pos) {
        if (pos == pp) {
            multisets.push_back(cur);
            return;
        }
        for (int v = start; v < nb; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            gen(v, pos + 1);
        }
    };
    gen(0, 0);
    for (const auto& ms : multisets) {
        FpMat y = random_matrix(p, n, rng);
        auto arrangements = distinct_arrangements(ms);
        FpMat vz(p, n, n);
        for (const auto& a : arrangements) vz = fp_add(vz, product_of(basis, a));
        FpMat lhs = matrix_commutator(vz, y);
        FpMat rhs(p, n, n);
        for (const auto& a : arrangements) rhs = fp_add(rhs, nested_bracket(basis, a, y));
        rep.trials++;
        if (!(lhs == rhs)) {
            rep.failures++;
            rep.notes.push_back("diagram 2 failed on an orbit-sum basis element");
        }
    }
    // diagram 2 on pure powers of random elements
    for (int t = 0; t < trials; ++t) {
        FpMat x = random_matrix(p, n, rng);
        FpMat y = random_matrix(p, n, rng);
        FpMat lhs = matrix_commutator(fp_pow(x, static_cast<unsigned long>(p)), y);
        FpMat rhs = y;
        for (int i = 0; i < pp; ++i) rhs = matrix_commutator(x, rhs);
        rep.trials++;
        if (!(lhs == rhs)) {
            rep.failures++;
            rep.notes.push_back("diagram 2 failed on a pure power");
        }
    }
    return rep;
}

/* ---- derivations ---- */

TruncatedDerivation::TruncatedDerivation(long p_, int N_, std::vector<int> g_)
    : p(p_), N(N_), g(std::move(g_)) {
    if (N < 1) throw Error("TruncatedDerivation: N >= 1 required");
    g.resize(static_cast<size_t>(N), 0);
    for (int& c : g) c = static_cast<int>(((c % p) + p) % p);
    // ideal preservation: D(x^N) = N x^{N-1} g(x) = N g(0) x^{N-1} mod x^N
    if ((static_cast<long>(N) % p) * g[0] % p != 0)
        throw NotADerivation("value on x does not preserve the ideal (x^N)");
}

FpMat derivation_matrix(const TruncatedDerivation& d) {
    FpMat M(d.p, d.N, d.N);
    for (int j = 1; j < d.N; ++j) {
        // D(x^j) = j x^{j-1} g(x)
        for (int i = 0; i < d.N; ++i) {
            int e = j - 1 + i;
            if (e < d.N)
                M.at(e, j) = static_cast<int>((M.at(e, j) + 1L * j * d.g[static_cast<size_t>(i)]) %
                                              d.p);
        }
    }
    return M;
}

TruncatedDerivation derivation_pth_power(const TruncatedDerivation& d) {
    FpMat M = derivation_matrix(d);
    FpMat Mp = fp_pow(M, static_cast<unsigned long>(d.p));
    std::vector<int> h(static_cast<size_t>(d.N), 0);
    for (int i = 0; i < d.N; ++i) h[static_cast<size_t>(i)] = Mp.at(i, 1 % d.N);
    if (d.N == 1) h[0] = 0;
    TruncatedDerivation out(d.p, d.N, h);
    if (!(derivation_matrix(out) == Mp))
        throw NotADerivation("p-fold composite is not the derivation of its value on x");
    // Leibniz on monomial pairs
    for (int i = 0; i + 1 < d.N; ++i)
        for (int j = 1; i + j < d.N; ++j) {
            // D(x^{i+j}) vs x^i D(x^j) + x^j D(x^i)
            for (int e = 0; e < d.N; ++e) {
                long lhs = Mp.at(e, i + j);
                long rhs = 0;
                if (e - i >= 0) rhs += Mp.at(e - i, j);
                if (e - j >= 0) rhs += Mp.at(e - j, i);
                if (((lhs - rhs) % d.p + d.p) % d.p != 0)
                    throw NotADerivation("Leibniz check failed for the composite");
            }
        }
    return out;
}

}  // namespace charp
