#include "jetgeo/action_angle.hpp"

#include "jetgeo/errors.hpp"
#include "jetgeo/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jetgeo {

namespace {

void require_compact(const HillInterval& h) {
    if (!h.bounded())
        throw UnboundedIntervalError("operation requires a compact Hill interval");
}

// Clamp a trajectory point into [lo, hi]; integrator rounding may overshoot
// the turning points by a hair, anything larger is a genuine escape.
double clamp_inside(const HillInterval& h, double x) {
    const double slack = 1e-6 * std::max(1.0, h.width());
    if (x < h.lo - slack || x > h.hi + slack)
        throw OutsideHillError("trajectory point x = " + std::to_string(x) +
                               " has left the Hill interval");
    return std::clamp(x, h.lo, h.hi);
}

int validate_branch(int branch) {
    if (branch != 1 && branch != -1)
        throw std::invalid_argument("branch must be +1 (upward) or -1 (downward)");
    return branch;
}

std::vector<double> factorials(int k) {
    std::vector<double> f(static_cast<std::size_t>(k) + 1, 1.0);
    for (int i = 2; i <= k; ++i)
        f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
}

}  // namespace

double area_progress(const HillInterval& h, double x, const QuadratureSpec& spec) {
    if (!h.bounded()) {
        // Constant F: sqrt(1 - F^2) is constant, basepoint at the origin.
        const double c = h.f.eval(0.0);
        return std::sqrt(std::max(0.0, (1.0 - c) * (1.0 + c))) * x;
    }
    const double xc = clamp_inside(h, x);
    const Polynomial q = one_minus_square(h.f);
    return integrate_singular_partial([](double) { return 1.0; }, q, h.lo, h.hi, xc,
                                      SingularWeight::Sqrt, spec)
        .value;
}

double holonomy_progress(const HillInterval& h, int i, double x, const QuadratureSpec& spec) {
    require_compact(h);
    if (h.geo_class != GeoClass::XPeriodic)
        throw CriticalEndpointError("partial holonomy diverges at a critical endpoint");
    if (i < 0 || i > h.f.bound())
        throw std::invalid_argument("holonomy_progress: index out of range");
    const double xc = clamp_inside(h, x);
    const Polynomial q = one_minus_square(h.f);
    const auto g = [&](double t) { return std::pow(t, i) * h.f.eval(t); };
    return integrate_singular_partial(g, q, h.lo, h.hi, xc, SingularWeight::InverseSqrt, spec)
        .value;
}

double generating_function(const HillInterval& h, double x, int branch,
                           std::span<const double> thetas, const QuadratureSpec& spec) {
    validate_branch(branch);
    const std::size_t n = static_cast<std::size_t>(h.f.bound()) + 1;
    if (thetas.size() != n)
        throw std::invalid_argument("generating_function: need one theta per coefficient of F");
    const auto fact = factorials(h.f.bound());
    double s = branch * area_progress(h, x, spec);
    for (std::size_t i = 0; i < n; ++i) s += fact[i] * h.f[static_cast<int>(i)] * thetas[i];
    return s;
}

double angle_phi_h(const HillInterval& h, double x, int branch, const QuadratureSpec& spec) {
    validate_branch(branch);
    require_compact(h);
    if (h.geo_class != GeoClass::XPeriodic)
        throw CriticalEndpointError("loop angle needs a loop: both endpoints must be regular");
    const double pi_area = action(h, spec);
    const double a = area_progress(h, x, spec);
    return branch > 0 ? a / pi_area : 1.0 - a / pi_area;
}

double angle_phi_time(double t, double period_L) {
    if (!(period_L > 0.0)) throw std::invalid_argument("angle_phi_time: period must be positive");
    return t / period_L;
}

ActionAngleTrace action_angle_trace(const HillInterval& h, const Trajectory& traj,
                                    const QuadratureSpec& spec) {
    require_compact(h);
    if (h.geo_class != GeoClass::XPeriodic)
        throw CriticalEndpointError("action-angle trace needs regular turning points");
    if (traj.samples.empty())
        throw std::invalid_argument("action_angle_trace: empty trajectory");

    const int k = h.f.bound();
    const std::size_t n = static_cast<std::size_t>(k) + 1;
    const auto fact = factorials(k);
    const double pi_area = action(h, spec);
    const std::vector<double> dtheta = holonomy(h, spec);

    ActionAngleTrace trace;
    const std::size_t m = traj.samples.size();
    trace.t.reserve(m);
    trace.s.reserve(m);
    trace.phi_h.reserve(m);
    trace.phi.assign(n, {});
    for (auto& row : trace.phi) row.reserve(m);

    // Offsets accumulated at branch flips keep every unwrapped quantity
    // continuous: a top turn adds Pi to S, 1 to phi_h, and retires one
    // period's holonomy from each invariant angle.
    double c_s = 0.0;
    double c_h = 0.0;
    std::vector<double> c_phi(n, 0.0);

    auto initial_branch = [&](const State& st) {
        if (st.px > 0.0) return +1;
        if (st.px < 0.0) return -1;
        return (st.x - h.lo <= h.hi - st.x) ? +1 : -1;
    };
    int branch = initial_branch(traj.samples.front());

    for (const State& st : traj.samples) {
        if (st.thetas.size() != n)
            throw std::invalid_argument("action_angle_trace: sample angle count mismatch");
        int next = branch;
        if (st.px > 0.0) next = +1;
        if (st.px < 0.0) next = -1;
        if (next != branch) {
            if (branch == +1) {  // top turn at x = hi
                c_s += pi_area;
                c_h += 1.0;
                for (std::size_t i = 0; i < n; ++i) c_phi[i] -= fact[i] * dtheta[i];
            }  // bottom turn: all three families are already continuous there
            branch = next;
        }

        const double x = clamp_inside(h, st.x);
        const double a = area_progress(h, x, spec);
        double s = branch * a + c_s;
        for (std::size_t i = 0; i < n; ++i) s += fact[i] * h.f[static_cast<int>(i)] * st.thetas[i];

        trace.t.push_back(st.t);
        trace.s.push_back(s);
        trace.phi_h.push_back(branch * a / pi_area + c_h);
        for (std::size_t i = 0; i < n; ++i) {
            const double b = holonomy_progress(h, static_cast<int>(i), x, spec);
            trace.phi[i].push_back(-branch * b + fact[i] * st.thetas[i] + c_phi[i]);
        }
    }
    return trace;
}

CalibrationReport calibration_check(const ActionAngleTrace& trace, double period_L) {
    if (!(period_L > 0.0))
        throw std::invalid_argument("calibration_check: period must be positive");
    if (trace.t.size() < 2)
        throw std::invalid_argument("calibration_check: need at least two samples");

    CalibrationReport rep;
    for (std::size_t j = 0; j + 1 < trace.t.size(); ++j) {
        const double dt = trace.t[j + 1] - trace.t[j];
        if (!(dt > 0.0)) continue;
        const double rate = (trace.s[j + 1] - trace.s[j]) / dt;
        rep.ds_dt_max_residual = std::max(rep.ds_dt_max_residual, std::abs(rate - 1.0));
    }
    for (const auto& row : trace.phi) {
        const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
        rep.phi_const_max_range = std::max(rep.phi_const_max_range, *hi - *lo);
    }
    const double span = trace.t.back() - trace.t.front();
    rep.phi_h_loop_residual =
        std::abs((trace.phi_h.back() - trace.phi_h.front()) - span / period_L);
    return rep;
}

}  // namespace jetgeo
