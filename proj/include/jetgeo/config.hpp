#pragma once

#include "jetgeo/hill.hpp"
#include "jetgeo/polynomial.hpp"
#include "jetgeo/quadrature.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jetgeo {

/** One scenario: the polynomial F, an optional interval selector, and the
 *  numerical knobs shared by every command.
 *
 *  Invariants (validate() throws ConfigError): coefficients has length
 *  k + 1 with 0 <= k <= 15 and finite entries; the quadrature spec is
 *  well-formed; ode_tol is positive; samples_per_period >= 16; an
 *  interval_hint, if present, is a finite pair with lo < hi.
 */
struct ScenarioConfig {
    int k = 1;
    std::vector<double> coefficients{0.0, 1.0};
    std::optional<std::array<double, 2>> interval_hint;
    QuadratureSpec quadrature{};
    double ode_tol = 1e-10;
    int samples_per_period = 512;
    std::uint64_t seed = 0;

    Polynomial polynomial() const { return Polynomial(coefficients); }
    void validate() const;
};

/** Parse a scenario from JSON text. Required keys: "k", "coefficients".
 *  Optional: "interval_hint" (array [lo, hi]), "quadrature" (object with
 *  "rel_tol" / "abs_tol" / "max_level"), "ode_tol", "samples_per_period",
 *  "seed". Unknown keys anywhere are rejected: a typo must fail loudly,
 *  not silently fall back to a default. Throws ConfigError.
 */
ScenarioConfig parse_scenario(const std::string& json_text);

/// parse_scenario on the contents of `path`; ConfigError if unreadable.
ScenarioConfig load_scenario(const std::string& path);

/** Pick the interval a command operates on. With a hint: the first
 *  interval containing the hint midpoint, else the first one overlapping
 *  the hint (ConfigError when nothing matches). Without: the first
 *  XPeriodic interval, falling back to the first interval so that the
 *  caller surfaces the class-specific error.
 */
const HillInterval& select_interval(const std::vector<HillInterval>& intervals,
                                    const std::optional<std::array<double, 2>>& hint);

}  // namespace jetgeo
