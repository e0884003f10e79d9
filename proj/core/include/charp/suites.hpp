#pragma once

#include "charp/report.hpp"

namespace charp {

/*
 * Verification suites. name is one of witt, fgl, lie, gadual, specseq, all.
 * Reports are deterministic functions of the config (seeded randomness, no
 * timestamps unless timing is requested).
 */
Report run_suite(const std::string& name, const SuiteConfig& cfg);

/*
 * Worked example: the truncated polynomial ring F_p[c]/c^{n+1} with V(c) =
 * c^p, the induced derivation on the bigraded ring, and the page-p
 * differential [V, Bock] = 0 for the torsion-free lift.
 */
Report demo_projective_space(int n, long p, const SuiteConfig& cfg);

/*
 * Worked example: the p-th power of x d/dx on F_p[x]/(x^N) is x d/dx, and
 * of d/dx is zero.
 */
Report demo_gm_restricted(long p, const SuiteConfig& cfg);

}  // namespace charp
