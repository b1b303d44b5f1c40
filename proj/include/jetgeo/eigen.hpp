#pragma once

#include <vector>

namespace jetgeo {

/// Dense row-major square matrix; small (Gram matrices are (k+1) x (k+1)).
using Matrix = std::vector<std::vector<double>>;

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // vectors[j] is the unit eigenvector for values[j]
};

/** Full spectrum of a symmetric matrix via cyclic Jacobi rotations.
 *
 *  Sized for the small Gram matrices this library produces; throws
 *  std::invalid_argument for non-square or non-symmetric input and
 *  NoConvergenceError if the off-diagonal mass has not annihilated after
 *  max_sweeps full cycles (quadratic convergence makes that pathological).
 */
EigenDecomposition symmetric_eigen(Matrix a, int max_sweeps = 60);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& a);

}  // namespace jetgeo
