#pragma once

#include <map>
#include <utility>
#include <vector>

#include "charp/fpmat.hpp"
#include "charp/rng.hpp"

namespace charp {

/*
 * Bounded cochain complex of finite-dimensional F_p spaces with a finite
 * decreasing filtration F^0 ⊇ F^1 ⊇ ... ⊇ F^{levels-1} ⊇ 0. The basis of
 * each degree is adapted: vector j of degree k has a filtration level, and
 * F^t is spanned by the vectors of level >= t. d must respect levels and,
 * when the optional weight grading is present, preserve weights exactly.
 *
 * Page indexing follows the convention E_2^{s,t} = H^{s+t} gr^{-t}; page r
 * here is the textbook page r-1 for a decreasing filtration, and d_r has
 * bidegree (r, 1-r), i.e. filtration shift r-1.
 */
struct FilteredComplex {
    long p = 2;
    int deg_min = 0;
    int levels = 1;                         // filtration indices 0..levels-1
    std::vector<int> dims;                  // dims[k] for degree deg_min + k
    std::vector<std::vector<int>> level;    // level[k][j]
    std::vector<FpMat> d;                   // d[k]: degree k -> k+1 (last one into 0)
    std::vector<std::vector<int>> weight;   // optional, parallel to level

    int degree_count() const { return static_cast<int>(dims.size()); }
    bool has_weights() const { return !weight.empty(); }
};

/* throws InvalidFiltration when the invariants fail */
void validate_filtered(const FilteredComplex& fc);

struct PageEntry {
    int fl = 0;      // filtration level
    int k = 0;       // cohomological (total) degree
    int s = 0, t = 0;  // paper bidegree: t = -fl, s = k + fl
    FpMat reps;      // columns: class representatives in C^k coordinates
    FpMat bnd;       // columns: basis of the subspace quotiented away
    int dim = 0;
};

struct SpectralPage {
    long p = 2;
    int r = 2;  // paper index
    std::map<std::pair<int, int>, PageEntry> entries;      // key (fl, k)
    std::map<std::pair<int, int>, FpMat> differentials;    // d_r out of (fl, k)

    int total_dim() const;
    int dim_at(int fl, int k) const;
    int d_rank(int fl, int k) const;
};

/* page r of the spectral sequence, r >= 2 */
SpectralPage page_at(const FilteredComplex& fc, int r);

/* the r = 2 page */
SpectralPage initial_page(const FilteredComplex& fc);

/*
 * E_{r+1} from E_r. Recomputed from the representative calculus and checked
 * against ker d_r / im d_r of the given page at every bidegree.
 */
SpectralPage turn_page(const SpectralPage& page, const FilteredComplex& fc);

/* stable page: F^t ∩ ker d modulo F^{t+1} ∩ ker d + F^t ∩ im d */
SpectralPage infinity_page(const FilteredComplex& fc);

/* dim H^k(C) per degree, by rank computations on the unfiltered complex */
std::vector<int> cohomology_dims(const FilteredComplex& fc);

/*
 * Splitting data of order n: for each window start t and degree k, the
 * images in C^k of the window-graded basis vectors (levels t..t+n, in basis
 * order). Verified conditions: filtered, identity on associated graded, and
 * a chain map modulo F^{t+n+1}.
 */
struct SplitData {
    int order = 0;
    std::map<std::pair<int, int>, FpMat> sigma;  // key (t, k)
};

/* the identity splitting; verifies iff d has no level shift in 1..n */
SplitData canonical_split(const FilteredComplex& fc, int order);

bool verify_split(const FilteredComplex& fc, const SplitData& sd);

/* split to order n forces d_r = 0 for paper pages r <= n+1 */
bool split_vanishing_check(const FilteredComplex& fc, const SplitData& sd);

/*
 * The connecting map e: gr^t -> gr^{t+n+1}[1] of the window extension,
 * as matrices H^k(gr^t) -> H^{k+1}(gr^{t+n+1}) together with the chosen
 * cohomology bases.
 */
struct GrCohomology {
    // per degree k: representative columns (in gr^t coordinates) of H^k
    std::vector<FpMat> reps;
};

GrCohomology gr_cohomology(const FilteredComplex& fc, int t);

struct ExtensionEdge {
    int order = 0;
    // key (t, k): matrix from H^k(gr^t) to H^{k+1}(gr^{t+n+1})
    std::map<std::pair<int, int>, FpMat> h_e;
};

ExtensionEdge extension_edge(const FilteredComplex& fc, const SplitData& sd);

/* H(e) equals d_{n+2} under the splitting-induced page identification */
bool edge_matches_next_differential(const FilteredComplex& fc, const SplitData& sd);

struct AdamsReport {
    long p = 2;
    long m = 0;
    std::vector<int> allowed_pages;    // r with m^{r-1} = 1 mod p, within range
    std::vector<int> forbidden_pages;  // complement in the computed range
    bool structural_ok = false;        // weight classes differ on forbidden pages
    bool computed_ok = false;          // computed d_r vanish on forbidden pages
};

/*
 * Weight purity (weights = level mod p-1 as psi_m-eigenvalue exponents) plus
 * weight-preserving d force d_r = 0 unless r = 1 mod p-1. m must be a
 * primitive root mod p.
 */
AdamsReport adams_vanishing_check(const FilteredComplex& fc, long m, long p);

/* ---- instance generators with known ground truth ---- */

/*
 * Random filtered complex assembled from matched pairs and singletons, then
 * conjugated by a random filtration-preserving change of basis. dim H is
 * known by construction and independently recomputable.
 */
FilteredComplex random_filtered_complex(long p, SplitMix64& rng, int max_total_dim = 8);

/*
 * Graded complex plus a perturbation shifting filtration by exactly
 * order+1: split to the given order via the canonical splitting, with
 * d_{order+2} the first page that can be nonzero. With weights == level mod
 * p-1 the perturbation shift must be a multiple of p-1 (pass pure_weights).
 */
FilteredComplex random_split_instance(long p, int order, SplitMix64& rng,
                                      bool pure_weights = false);

}  // namespace charp
