#pragma once

#include "jetgeo/polynomial.hpp"

#include <cstddef>
#include <vector>

namespace jetgeo {

/// Point on a unit-speed geodesic: base coordinate x, fiber angles
/// theta_0..theta_k, and the conjugate momentum p_x. The fiber momenta are
/// constants of motion (the coefficients of F) and are not carried here.
struct State {
    double t = 0.0;
    double x = 0.0;
    double px = 0.0;
    std::vector<double> thetas;
};

struct StepStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double max_energy_drift = 0.0;  // max |px^2 + F(x)^2 - E0| over accepted steps
};

struct Trajectory {
    std::vector<State> samples;  // uniformly spaced in t, endpoints included
    StepStats stats;
};

/** Right-hand side of the geodesic equations for momenta frozen at the
 *  coefficients of F:
 *      x' = px,  px' = -F(x) F'(x),  theta_i' = (x^i / i!) F(x).
 *  Layout of y: [x, px, theta_0..theta_k] with k = f.bound().
 */
std::vector<double> vector_field(const Polynomial& f, const std::vector<double>& y);

/// +sqrt(1 - F(x)^2), the on-shell momentum magnitude at x. Throws
/// OutsideHillError when F(x)^2 > 1 beyond rounding noise.
double level_momentum(const Polynomial& f, double x);

/** Integrate the geodesic flow from `start` to absolute time t_end with an
 *  adaptive embedded 5(4) Runge-Kutta pair, returning sample_count states at
 *  uniform times (dense-output interpolation between accepted steps).
 *
 *  Throws BadInitialEnergyError unless |px^2 + F(x)^2 - 1| <= 1e-9 at the
 *  start, StepSizeUnderflowError if step control collapses, and
 *  std::invalid_argument for a malformed start state or sample_count < 2.
 */
Trajectory integrate_geodesic(const Polynomial& f, const State& start, double t_end,
                              double ode_tol, int sample_count);

}  // namespace jetgeo
