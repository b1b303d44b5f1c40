#pragma once

#include "jetgeo/polynomial.hpp"

#include <vector>

namespace jetgeo {

struct RealRoot {
    double location = 0.0;
    bool simple = true;
};

/// All real roots of a polynomial, sorted by location.
struct RootList {
    std::vector<RealRoot> roots;

    bool empty() const { return roots.empty(); }
    size_t size() const { return roots.size(); }
};

/** Isolate and refine every real root of q.
 *
 *  Roots are isolated by Sturm-sequence sign counting inside the Cauchy
 *  bound B = 1 + max|a_i|/|a_deg|, narrowed by bisection on the counts
 *  (which, unlike sign bisection on q itself, also separates roots of
 *  even multiplicity), and polished by Newton — on q for simple roots,
 *  on the first non-vanishing derivative order otherwise.
 *
 *  A root r is flagged simple iff |q'(r)| > simple_tol * scale(q' at r).
 *
 *  Throws IdenticallyZeroError for the zero polynomial and
 *  NoConvergenceError when refinement stalls or a polished root fails the
 *  residual bound |q(r)| <= 1e-14 * scale(q at r).
 */
RootList real_roots(const Polynomial& q, double simple_tol = 1e-8);

}  // namespace jetgeo
