#pragma once

#include "jetgeo/flow.hpp"
#include "jetgeo/hill.hpp"
#include "jetgeo/holonomy.hpp"
#include "jetgeo/polynomial.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace jetgeo {

/// Shortest text that round-trips a finite double exactly (17 significant
/// digits); infinities print as inf / -inf.
std::string format_double(double v);

std::string to_string(EndpointKind kind);
std::string to_string(GeoClass gc);
EndpointKind parse_endpoint_kind(const std::string& s);
GeoClass parse_geo_class(const std::string& s);

/// Machine-readable Hill decomposition: the polynomial and every interval
/// with endpoint kinds and geodesic class. Unbounded endpoints are encoded
/// as the strings "-inf" / "inf" (JSON has no infinity literal).
std::string hill_report_json(const Polynomial& f, const std::vector<HillInterval>& intervals);

/// Full certificate for one interval, every field, fixed key order.
std::string period_report_json(const PeriodReport& report);

/// Inverse of period_report_json; throws ConfigError on malformed input.
/// Finite values round-trip bit-exactly through the 17-digit encoding.
PeriodReport parse_period_report(const std::string& json_text);

/// CSV with header t,x,p_x,theta_0..theta_k,energy_drift; one row per
/// sample; energy_drift is px^2 + F(x)^2 - 1 at that sample.
std::string trajectory_csv(const Polynomial& f, const Trajectory& traj);

/// One kept sweep instance, in attempt order.
struct SweepRow {
    int index = 0;   // attempt number, 0-based
    int degree = 0;  // degree of the drawn polynomial
    double period = 0.0;
    double action = 0.0;
    double lambda_min = 0.0;
    double identity_residual = 0.0;
    std::string verdict;
};

/** Sweep summary: attempts, kept rows in attempt order, failure count, and
 *  the aggregates (min lambda_min, max identity residual over kept rows;
 *  null when nothing was kept). Byte-identical for identical inputs.
 */
std::string sweep_report_json(std::uint64_t seed, int count, const std::vector<SweepRow>& rows,
                              int failures);

/// Phase portrait of the closed loop in the (x, p_x) plane as a standalone
/// 800x600 SVG (axes and polylines only). Requires an XPeriodic interval.
std::string svg_phase(const HillInterval& h, int samples_per_branch = 256);

/// Projection of a trajectory to the (x, theta_0) plane, same canvas.
std::string svg_projection(const Trajectory& traj);

/// Write `content` to `path`, throwing ConfigError when the file cannot
/// be created.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace jetgeo
