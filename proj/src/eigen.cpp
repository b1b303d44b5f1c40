#include "jetgeo/eigen.hpp"

#include "jetgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace jetgeo {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
    return std::sqrt(2.0 * s);
}

void validate_symmetric(const Matrix& a) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const auto& row : a) {
        if (row.size() != n) throw std::invalid_argument("symmetric_eigen: matrix is not square");
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(a[i][j] - a[j][i]) > 1e-12 * std::max(1.0, scale))
                throw std::invalid_argument("symmetric_eigen: matrix is not symmetric");
}

}  // namespace

EigenDecomposition symmetric_eigen(Matrix a, int max_sweeps) {
    validate_symmetric(a);
    const std::size_t n = a.size();
    Matrix v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    if (n > 1) {
        const double stop = 1e-15 * std::max(1.0, off_diagonal_norm(a));
        bool converged = false;
        for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
            for (std::size_t p = 0; p < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a[p][q];
                    const double small =
                        1e-18 * std::sqrt(std::abs(a[p][p] * a[q][q]) + 1.0);
                    if (std::abs(apq) <= small) continue;
                    const double tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double aip = a[i][p];
                        const double aiq = a[i][q];
                        a[i][p] = c * aip - s * aiq;
                        a[i][q] = s * aip + c * aiq;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        const double api = a[p][i];
                        const double aqi = a[q][i];
                        a[p][i] = c * api - s * aqi;
                        a[q][i] = s * api + c * aqi;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        const double vip = v[i][p];
                        const double viq = v[i][q];
                        v[i][p] = c * vip - s * viq;
                        v[i][q] = s * vip + c * viq;
                    }
                }
            }
            converged = off_diagonal_norm(a) <= stop;
        }
        if (!converged)
            throw NoConvergenceError("Jacobi eigensolver did not annihilate off-diagonal mass");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a[i][i] < a[j][j]; });

    EigenDecomposition out;
    out.values.reserve(n);
    out.vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        out.values.push_back(a[order[j]][order[j]]);
        for (std::size_t i = 0; i < n; ++i) out.vectors[j][i] = v[i][order[j]];
    }
    return out;
}

double min_eigenvalue(const Matrix& a) {
    return symmetric_eigen(a).values.front();
}

}  // namespace jetgeo
