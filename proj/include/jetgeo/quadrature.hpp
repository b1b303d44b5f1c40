#pragma once

#include "jetgeo/polynomial.hpp"

#include <cstddef>
#include <functional>

namespace jetgeo {

/// Tolerances and level budget for the double-exponential rule.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_level = 12;

    /// Throws std::invalid_argument unless both tolerances are positive and
    /// max_level lies in [4, 20].
    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |S_l - S_{l-1}| at acceptance
    int levels_used = 0;
    std::size_t evaluations = 0;
};

enum class SingularWeight {
    InverseSqrt,  // g(x) / sqrt(Q(x))
    Sqrt          // g(x) * sqrt(Q(x))
};

/** Tanh-sinh integration of a smooth integrand g over [a, b].
 *
 *  Successive level halvings of the trapezoid step; accepted once two
 *  consecutive levels agree to max(abs_tol, rel_tol * |S|) from level 2 on.
 *  Throws NoConvergenceError when max_level is exhausted first.
 */
QuadratureResult integrate_regular(const std::function<double(double)>& g, double a, double b,
                                   const QuadratureSpec& spec);

/** Integral of g(x) * w(Q(x)) over the full interval [lo, hi], where Q
 *  vanishes at lo and hi and is positive between them.
 *
 *  Q is never evaluated directly near its roots: the factor (x-lo)(hi-x) is
 *  deflated out once and the two distances are reconstructed from the
 *  double-exponential transform, so the endpoint singularities are computed
 *  without catastrophic cancellation. With InverseSqrt weight both endpoint
 *  roots must be simple for the integral to exist.
 */
QuadratureResult integrate_singular(const std::function<double(double)>& g, const Polynomial& q,
                                    double lo, double hi, SingularWeight weight,
                                    const QuadratureSpec& spec);

/** Partial integral of g(x) * w(Q(x)) from lo up to x_upper in [lo, hi].
 *
 *  Same deflation contract as integrate_singular; the distance from the
 *  moving node to hi stays cancellation-free even when x_upper approaches
 *  hi. Throws OutsideHillError when x_upper leaves [lo, hi].
 */
QuadratureResult integrate_singular_partial(const std::function<double(double)>& g,
                                            const Polynomial& q, double lo, double hi,
                                            double x_upper, SingularWeight weight,
                                            const QuadratureSpec& spec);

}  // namespace jetgeo
