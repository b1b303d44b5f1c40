#include "jetgeo/hill.hpp"

#include "jetgeo/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace jetgeo {

namespace detail {

namespace {

// Safety net behind the Sturm isolator: between consecutive roots the sign
// of Q cannot change, but a missed near-double root would surface here as a
// strictly negative interior value.
void validate_positive(const Polynomial& q, double lo, double hi) {
    auto check = [&](double x) {
        const double v = q.eval(x);
        if (v < -1e-12 * std::max(1.0, q.eval_scale(x))) {
            throw InconsistentComputationError(
                "radicand dips negative at x=" + std::to_string(x) +
                " inside a candidate positivity interval; the root set is incomplete");
        }
    };
    constexpr int kGrid = 101;
    for (int j = 1; j <= kGrid; ++j) {
        check(lo + (hi - lo) * j / (kGrid + 1));
    }
    const Polynomial dq = q.derivative();
    if (dq.degree() >= 1) {
        for (const RealRoot& c : real_roots(dq).roots) {
            if (c.location > lo && c.location < hi) check(c.location);
        }
    }
}

}  // namespace

std::vector<RadicandInterval> radicand_intervals(const Polynomial& q, double min_width) {
    std::vector<RadicandInterval> out;
    const RootList rl = real_roots(q);
    for (std::size_t i = 0; i + 1 < rl.roots.size(); ++i) {
        const RealRoot& a = rl.roots[i];
        const RealRoot& b = rl.roots[i + 1];
        if (b.location - a.location < min_width) continue;
        if (q.eval(0.5 * (a.location + b.location)) <= 0.0) continue;
        validate_positive(q, a.location, b.location);
        out.push_back({a.location, b.location, a.simple, b.simple});
    }
    return out;
}

}  // namespace detail

namespace {

HillInterval whole_line(const Polynomial& f, GeoClass cls) {
    HillInterval h;
    h.f = f;
    h.lo = -std::numeric_limits<double>::infinity();
    h.hi = std::numeric_limits<double>::infinity();
    h.lo_kind = EndpointKind::Unbounded;
    h.hi_kind = EndpointKind::Unbounded;
    h.geo_class = cls;
    return h;
}

}  // namespace

std::vector<HillInterval> hill_intervals(const Polynomial& f) {
    if (f.is_constant()) {
        const double c = f.eval(0.0);
        const double q0 = (1.0 - c) * (1.0 + c);
        if (std::abs(q0) <= 1e-12) {
            return {whole_line(f, GeoClass::AbnormalPoint)};
        }
        if (q0 > 0.0) {
            return {whole_line(f, GeoClass::HorizontalLine)};
        }
        throw NoHillIntervalError("constant F with |F| > 1 admits no region where F^2 < 1");
    }

    const Polynomial q = one_minus_square(f);
    const auto segs = detail::radicand_intervals(q);
    if (segs.empty()) {
        throw NoHillIntervalError("F^2 >= 1 everywhere: no interval of positive width with F^2 < 1");
    }

    std::vector<HillInterval> out;
    out.reserve(segs.size());
    for (const auto& s : segs) {
        HillInterval h;
        h.f = f;
        h.lo = s.lo;
        h.hi = s.hi;
        h.lo_kind = s.lo_simple ? EndpointKind::Regular : EndpointKind::Critical;
        h.hi_kind = s.hi_simple ? EndpointKind::Regular : EndpointKind::Critical;
        h.geo_class = (s.lo_simple && s.hi_simple) ? GeoClass::XPeriodic : GeoClass::EndpointCritical;
        out.push_back(std::move(h));
    }
    return out;
}

LoopSmoothness classify_loop(const HillInterval& h) {
    if (!h.bounded()) {
        throw UnboundedIntervalError("loop classification requires a compact Hill interval");
    }
    return h.geo_class == GeoClass::XPeriodic ? LoopSmoothness::Smooth : LoopSmoothness::NonSmooth;
}

}  // namespace jetgeo
