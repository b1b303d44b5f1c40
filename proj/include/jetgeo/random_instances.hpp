#pragma once

#include "jetgeo/polynomial.hpp"

#include <cstdint>
#include <random>

namespace jetgeo {

/** Deterministic random stream for sweeps. mt19937_64 output is pinned by
 *  the standard, and the mapping to doubles is spelled out here rather than
 *  delegated to the (implementation-defined) distribution classes, so the
 *  same seed produces the same instances on every platform.
 */
class InstanceRng {
public:
    explicit InstanceRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1): the top 53 bits of one engine draw.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

/** One random polynomial: degree uniform in {1, ..., max_degree},
 *  coefficients uniform in [-2, 2]. The draw order (degree, then
 *  a_0..a_degree) is part of the determinism contract.
 */
Polynomial random_instance(InstanceRng& rng, int max_degree);

}  // namespace jetgeo
