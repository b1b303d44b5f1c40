#pragma once

#include "jetgeo/polynomial.hpp"
#include "jetgeo/roots.hpp"

#include <vector>

namespace jetgeo {

enum class EndpointKind { Regular, Critical, Unbounded };

enum class GeoClass {
    XPeriodic,         // both endpoints regular: closed smooth loop, periodic x-motion
    EndpointCritical,  // bounded, at least one critical endpoint
    HorizontalLine,    // constant F with F^2 < 1: the interval is the whole line
    AbnormalPoint      // constant F = +-1
};

enum class LoopSmoothness { Smooth, NonSmooth };

/** A maximal closed interval where F^2 < 1 inside and F^2 = 1 on the
 *  boundary, together with the endpoint regularity classification and the
 *  geodesic class it carries.
 *
 *  For HorizontalLine / AbnormalPoint the interval is unbounded (lo/hi are
 *  -+infinity) or a degenerate marker; bounded() distinguishes the compact
 *  case every quadrature requires.
 */
struct HillInterval {
    Polynomial f;
    double lo = 0.0;
    double hi = 0.0;
    EndpointKind lo_kind = EndpointKind::Regular;
    EndpointKind hi_kind = EndpointKind::Regular;
    GeoClass geo_class = GeoClass::XPeriodic;

    bool bounded() const {
        return geo_class == GeoClass::XPeriodic || geo_class == GeoClass::EndpointCritical;
    }
    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
};

/** Enumerate the Hill intervals of F, sorted by left endpoint.
 *
 *  Constant F: one HorizontalLine interval for F^2 < 1, one AbnormalPoint
 *  marker for F = +-1. Nonconstant F: every returned interval is compact.
 *  Throws NoHillIntervalError when F^2 >= 1 everywhere leaves no interval
 *  of positive width.
 */
std::vector<HillInterval> hill_intervals(const Polynomial& f);

/// Smooth iff both endpoints are regular, i.e. the class is XPeriodic.
/// Throws UnboundedIntervalError for line/point inputs.
LoopSmoothness classify_loop(const HillInterval& h);

namespace detail {

/// A compact interval with Q > 0 inside and Q = 0 at both ends.
struct RadicandInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_simple = true;
    bool hi_simple = true;
};

/** Positivity intervals of a nonconstant polynomial Q between consecutive
 *  real roots. Intervals narrower than min_width are dropped as clustered
 *  double-root artifacts. Shared critical endpoints (Q > 0 on both sides of
 *  a multiple root) yield two adjacent intervals.
 */
std::vector<RadicandInterval> radicand_intervals(const Polynomial& q, double min_width = 1e-9);

}  // namespace detail

}  // namespace jetgeo
