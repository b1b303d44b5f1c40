#include "jetgeo/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace jetgeo {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("Polynomial: coefficient vector must be nonempty");
}

Polynomial Polynomial::zero(int k) {
    if (k < 0)
        throw std::invalid_argument("Polynomial::zero: bound must be >= 0");
    return Polynomial(std::vector<double>(static_cast<size_t>(k) + 1, 0.0));
}

int Polynomial::degree() const {
    for (int i = bound(); i >= 0; --i)
        if (coeffs_[static_cast<size_t>(i)] != 0.0)
            return i;
    return -1;
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (int i = bound(); i >= 0; --i)
        acc = acc * x + coeffs_[static_cast<size_t>(i)];
    return acc;
}

double Polynomial::eval_scale(double x) const {
    const double ax = std::abs(x);
    double acc = 0.0;
    for (int i = bound(); i >= 0; --i)
        acc = acc * ax + std::abs(coeffs_[static_cast<size_t>(i)]);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (bound() == 0)
        return Polynomial({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::translate(double x0) const {
    // Taylor shift: repeated synthetic evaluation at c = -x0 turns a into
    // the coefficients of F(x + c) = F(x - x0).
    const double c = -x0;
    std::vector<double> b = coeffs_;
    const int k = bound();
    for (int i = 0; i < k; ++i)
        for (int j = k - 1; j >= i; --j)
            b[static_cast<size_t>(j)] += c * b[static_cast<size_t>(j) + 1];
    return Polynomial(std::move(b));
}

Polynomial Polynomial::scaled(double s) const {
    std::vector<double> b = coeffs_;
    for (double& v : b)
        v *= s;
    return Polynomial(std::move(b));
}

Polynomial one_minus_square(const Polynomial& f) {
    return level_radicand(f, 0.5);
}

Polynomial deflate(const Polynomial& p, double root) {
    const int n = p.degree();
    if (n < 1)
        throw std::invalid_argument("deflate: polynomial must have degree >= 1");
    std::vector<double> b(static_cast<size_t>(n));
    double acc = p[n];
    for (int j = n - 1; j >= 0; --j) {
        b[static_cast<size_t>(j)] = acc;
        acc = p[j] + root * acc;
    }
    return Polynomial(std::move(b));
}

Polynomial level_radicand(const Polynomial& f, double h) {
    const int k = f.bound();
    std::vector<double> q(2 * static_cast<size_t>(k) + 1, 0.0);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            q[static_cast<size_t>(i + j)] -= f[i] * f[j];
    q[0] += 2.0 * h;
    return Polynomial(std::move(q));
}

}  // namespace jetgeo
