#pragma once

#include "jetgeo/eigen.hpp"
#include "jetgeo/hill.hpp"
#include "jetgeo/polynomial.hpp"
#include "jetgeo/quadrature.hpp"

#include <string>
#include <vector>

namespace jetgeo {

enum class Verdict {
    NoPeriodicGeodesics,  // nondegenerate inner product forces a nonzero holonomy vector
    DegenerateInput       // constant F: lines or abnormal points, nothing to certify
};

std::string to_string(Verdict v);

/** Everything the certificate for one compact Hill interval rests on.
 *
 *  All quantities are computed on the recentered instance ft(u) = F(c + su),
 *  u in [-1, 1], with c the midpoint and s the half-width of the interval,
 *  because raw monomial arithmetic fails twice on narrow or off-center
 *  intervals: the monomial Gram matrix turns numerically indefinite although
 *  the true one is positive definite, and far from the origin 1 - F^2 cannot
 *  even be evaluated to relative accuracy in doubles.  The substitution
 *  x = c + su is exact, and the change of basis is a congruence, so every
 *  certified statement is the same statement.  On [-1, 1] the recentered and
 *  monomial formulations coincide.
 *
 *  gram, lambda_min and margin refer to the recentered basis u^i with the
 *  x-measure: gram[i][j] = int u^(i+j) / sqrt(1 - F^2) dx.  delta_theta is
 *  the monomial holonomy vector obtained from quadrature of the recentered
 *  moments; delta_theta_gram is the same vector predicted through the moment
 *  matrix instead, and gram_residual is their scaled disagreement (measured
 *  in the recentered basis).  identity_residual measures
 *  L - Pi - sum_i i! a_i dtheta_i, which vanishes exactly, evaluated in its
 *  cancellation-free recentered form.  margin = 2 lambda_min |b| /
 *  (k! sqrt(k+1)), with b the coefficients of ft, is the proven lower bound
 *  for the largest recentered holonomy component 2 ht_i / i! implied by the
 *  smallest Gram eigenvalue.
 */
struct PeriodReport {
    HillInterval interval;
    double period = 0.0;  // L: time for one full x-oscillation
    double action = 0.0;  // Pi: area enclosed by the level oval in the (x, px) plane
    std::vector<double> delta_theta;
    std::vector<double> delta_theta_gram;
    Matrix gram;
    double lambda_min = 0.0;
    double gram_residual = 0.0;
    double identity_residual = 0.0;
    double margin = 0.0;
    Verdict verdict = Verdict::DegenerateInput;
};

/// L = 2 int_I dx / sqrt(1 - F^2). Throws CriticalEndpointError when the
/// integral diverges at a non-simple endpoint, UnboundedIntervalError for
/// line/point inputs.
double period(const HillInterval& h, const QuadratureSpec& spec);

/// Pi = 2 int_I sqrt(1 - F^2) dx; finite for every compact interval.
double action(const HillInterval& h, const QuadratureSpec& spec);

/// Holonomy of the fiber angles over one x-period:
/// dtheta_i = (2 / i!) int_I x^i F / sqrt(1 - F^2) dx, i = 0..k.
std::vector<double> holonomy(const HillInterval& h, const QuadratureSpec& spec);

/// <P1, P2> = int_I P1 P2 / sqrt(1 - F^2) dx, the inner product whose
/// nondegeneracy the certificate hinges on.
double inner_product(const Polynomial& p1, const Polynomial& p2, const HillInterval& h,
                     const QuadratureSpec& spec);

/// Gram matrix of the monomials 1, x, ..., x^k in that inner product,
/// assembled from the 2k+1 moment integrals.
Matrix gram_matrix(const HillInterval& h, const QuadratureSpec& spec);

/** Central finite difference of the action in the energy level:
 *  [Pi(1/2 + eps) - Pi(1/2 - eps)] / (2 eps), re-solving the radicand
 *  interval at each perturbed level. Equals the period L in the limit.
 *  Throws PerturbationLeavesClassError if the perturbed interval no longer
 *  deforms the given one, std::invalid_argument for eps <= 0.
 */
double dPi_dh(const HillInterval& h, double eps, const QuadratureSpec& spec);

/// Central finite difference of the action in coefficient a_index; equals
/// -index! * dtheta_index in the limit. Same guards as dPi_dh.
double dPi_da(const HillInterval& h, int index, double eps, const QuadratureSpec& spec);

/** Full certificate for one interval. XPeriodic: computes all report
 *  fields, cross-validates them (Gram consistency, the L = Pi + sum
 *  identity, positivity of lambda_min, the margin bound) and throws
 *  InconsistentComputationError on any violation. Line/point intervals
 *  yield a DegenerateInput report; EndpointCritical throws
 *  CriticalEndpointError.
 */
PeriodReport certify_interval(const HillInterval& h, const QuadratureSpec& spec);

/// Certificates for every Hill interval of F, in left-to-right order.
std::vector<PeriodReport> certify(const Polynomial& f, const QuadratureSpec& spec);

}  // namespace jetgeo
