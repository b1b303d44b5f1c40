#include "jetgeo/random_instances.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace jetgeo {

Polynomial random_instance(InstanceRng& rng, int max_degree) {
    if (max_degree < 1)
        throw std::invalid_argument("random_instance: max_degree must be at least 1");
    const int degree =
        1 + std::min(max_degree - 1, static_cast<int>(rng.uniform01() * max_degree));
    std::vector<double> coeffs(static_cast<std::size_t>(degree) + 1);
    for (double& c : coeffs)
        c = rng.uniform(-2.0, 2.0);
    return Polynomial(coeffs);
}

}  // namespace jetgeo
