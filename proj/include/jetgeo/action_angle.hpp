#pragma once

#include "jetgeo/flow.hpp"
#include "jetgeo/hill.hpp"
#include "jetgeo/quadrature.hpp"

#include <span>
#include <vector>

namespace jetgeo {

/// A(x) = int_lo^x sqrt(1 - F^2) dx~: the x-part of the generating function
/// on the upward branch, with A(hi) = Pi / 2. Works on any interval where
/// x stays inside; closed form for constant F (basepoint 0).
double area_progress(const HillInterval& h, double x, const QuadratureSpec& spec);

/// B_i(x) = int_lo^x x~^i F / sqrt(1 - F^2) dx~, the partial holonomy
/// integral, with B_i(hi) = i! dtheta_i / 2. Requires regular endpoints.
double holonomy_progress(const HillInterval& h, int i, double x, const QuadratureSpec& spec);

/** Principal value of the generating function at a level-set point:
 *      S = branch * A(x) + sum_i i! a_i theta_i,
 *  branch = +1 on the upward momentum branch, -1 downward. Along a
 *  unit-speed geodesic its unwrapped continuation satisfies dS/dt = 1.
 */
double generating_function(const HillInterval& h, double x, int branch,
                           std::span<const double> thetas, const QuadratureSpec& spec);

/// Loop angle on the level oval, normalized to one unit per circuit:
/// A(x)/Pi on the upward branch, 1 - A(x)/Pi on the downward branch.
double angle_phi_h(const HillInterval& h, double x, int branch, const QuadratureSpec& spec);

/// The canonical time parametrization of the same angle: t / L.
double angle_phi_time(double t, double period_L);

/** Action-angle functions evaluated along an integrated trajectory, with
 *  branch flips detected from the momentum sign and all three families
 *  unwrapped into continuous functions of t:
 *    - s: generating function, gains Pi at each top turn (so dS/dt = 1);
 *    - phi_h: loop angle, gains 1 per circuit;
 *    - phi[i]: invariant angles -B_i(x) + i! theta_i, constant in t.
 */
struct ActionAngleTrace {
    std::vector<double> t;
    std::vector<double> s;
    std::vector<double> phi_h;
    std::vector<std::vector<double>> phi;  // phi[i][j]: angle i at sample j
};

ActionAngleTrace action_angle_trace(const HillInterval& h, const Trajectory& traj,
                                    const QuadratureSpec& spec);

/// Residuals of the exact calibration identities, for tests and reports.
struct CalibrationReport {
    double ds_dt_max_residual = 0.0;     // max_j |(S_{j+1}-S_j)/(t_{j+1}-t_j) - 1|
    double phi_const_max_range = 0.0;    // max_i (max_j phi_i - min_j phi_i)
    double phi_h_loop_residual = 0.0;    // |(phi_h(end) - phi_h(0)) - (t_end - t_0)/L|
};

CalibrationReport calibration_check(const ActionAngleTrace& trace, double period_L);

}  // namespace jetgeo
