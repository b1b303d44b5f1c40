#include "jetgeo/quadrature.hpp"

#include "jetgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jetgeo {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_level < 4 || max_level > 20)
        throw std::invalid_argument("QuadratureSpec: max_level must lie in [4, 20]");
}

namespace {

// Integrand in transformed coordinates: receives the node x together with
// its distances to both interval ends, computed without cancellation.
using NodeFn = std::function<double(double x, double d_lo, double d_hi)>;

// Abscissa cap: beyond this sigma = 1 - tanh((pi/2) sinh t) underflows.
constexpr double kTMax = 6.1;

struct NodeSample {
    double contribution = 0.0;
    bool representable = true;  // false once the endpoint distance underflows
};

NodeSample eval_node(const NodeFn& f, double a, double b, double half, double t,
                     std::size_t& evaluations) {
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double au = std::abs(u);
    const double sigma = 2.0 / (std::exp(2.0 * au) + 1.0);  // 1 - tanh|u|
    if (sigma == 0.0 || half * sigma == 0.0) return {0.0, false};
    // dx/dt = half * (pi/2) cosh t * sech^2 u, and sech^2 u = sigma(2-sigma).
    const double w = half * 0.5 * std::numbers::pi * std::cosh(t) * sigma * (2.0 - sigma);
    double x, d_lo, d_hi;
    if (u >= 0.0) {
        d_lo = half * (2.0 - sigma);
        d_hi = half * sigma;
        x = b - d_hi;
    } else {
        d_lo = half * sigma;
        d_hi = half * (2.0 - sigma);
        x = a + d_lo;
    }
    ++evaluations;
    return {w * f(x, d_lo, d_hi), true};
}

// Sums weighted nodes at t = sign * j * h for j in `first, first+stride, ...`
// until the contributions are negligible against the largest one seen.
double sweep_tail(const NodeFn& f, double a, double b, double half, double h, int sign, long first,
                  long stride, std::size_t& evaluations) {
    double sum = 0.0;
    double biggest = 0.0;
    int quiet = 0;
    for (long j = first;; j += stride) {
        const double t = static_cast<double>(j) * h;
        if (t > kTMax) break;
        const NodeSample s = eval_node(f, a, b, half, sign * t, evaluations);
        if (!s.representable) break;
        sum += s.contribution;
        biggest = std::max(biggest, std::abs(s.contribution));
        if (std::abs(s.contribution) <= 1e-17 * biggest) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    return sum;
}

QuadratureResult tanh_sinh(const NodeFn& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    QuadratureResult res;
    if (!(b >= a)) throw std::invalid_argument("tanh-sinh: interval endpoints out of order");
    if (b == a) return res;

    const double half = 0.5 * (b - a);
    std::size_t evaluations = 0;

    // Level 0: unit step over all integer abscissae.
    double node_sum = eval_node(f, a, b, half, 0.0, evaluations).contribution;
    node_sum += sweep_tail(f, a, b, half, 1.0, +1, 1, 1, evaluations);
    node_sum += sweep_tail(f, a, b, half, 1.0, -1, 1, 1, evaluations);

    double h = 1.0;
    double prev = node_sum * h;
    for (int level = 1; level <= spec.max_level; ++level) {
        h *= 0.5;
        // Refinement adds the odd multiples of the new step.
        node_sum += sweep_tail(f, a, b, half, h, +1, 1, 2, evaluations);
        node_sum += sweep_tail(f, a, b, half, h, -1, 1, 2, evaluations);
        const double cur = node_sum * h;
        res.levels_used = level;
        res.error_estimate = std::abs(cur - prev);
        res.evaluations = evaluations;
        if (level >= 2 && res.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(cur))) {
            res.value = cur;
            return res;
        }
        prev = cur;
    }
    throw NoConvergenceError("tanh-sinh quadrature did not meet tolerance within max_level=" +
                             std::to_string(spec.max_level) + " refinements");
}

// Q = (x - lo)(hi - x) * T with T positive on [lo, hi] when both roots are
// simple; T keeps a zero at any endpoint of higher multiplicity.
Polynomial deflated_positive_factor(const Polynomial& q, double lo, double hi) {
    return deflate(deflate(q, lo), hi).scaled(-1.0);
}

}  // namespace

QuadratureResult integrate_regular(const std::function<double(double)>& g, double a, double b,
                                   const QuadratureSpec& spec) {
    if (!(b >= a)) throw std::invalid_argument("integrate_regular: endpoints out of order");
    return tanh_sinh([&g](double x, double, double) { return g(x); }, a, b, spec);
}

QuadratureResult integrate_singular(const std::function<double(double)>& g, const Polynomial& q,
                                    double lo, double hi, SingularWeight weight,
                                    const QuadratureSpec& spec) {
    return integrate_singular_partial(g, q, lo, hi, hi, weight, spec);
}

QuadratureResult integrate_singular_partial(const std::function<double(double)>& g,
                                            const Polynomial& q, double lo, double hi,
                                            double x_upper, SingularWeight weight,
                                            const QuadratureSpec& spec) {
    if (!(hi > lo))
        throw std::invalid_argument("integrate_singular: interval endpoints out of order");
    if (!(x_upper >= lo) || !(x_upper <= hi))
        throw OutsideHillError("partial integral upper limit lies outside the interval");

    const Polynomial t = deflated_positive_factor(q, lo, hi);
    const double gap = hi - x_upper;
    // The root is taken factor by factor: the product d_lo * d_hi * T(x)
    // would underflow near the endpoints long before the distances do.
    const NodeFn f = [&](double x, double d_lo, double d_up) {
        const double d_hi = gap + d_up;
        const double tv = t.eval(x);
        if (weight == SingularWeight::InverseSqrt) {
            if (!(tv > 0.0))
                throw InconsistentComputationError(
                    "deflated radicand factor is not positive inside the interval");
            return g(x) / (std::sqrt(d_lo) * std::sqrt(d_hi) * std::sqrt(tv));
        }
        return g(x) * (std::sqrt(d_lo) * std::sqrt(d_hi) * std::sqrt(std::max(tv, 0.0)));
    };
    return tanh_sinh(f, lo, x_upper, spec);
}

}  // namespace jetgeo
