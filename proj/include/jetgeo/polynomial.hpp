#pragma once

#include <span>
#include <vector>

namespace jetgeo {

/** Real polynomial F(x) = sum a_i x^i with an explicit degree bound k.
 *
 *  Coefficients are stored ascending; trailing zeros are legal, so a
 *  polynomial of effective degree < k is a valid element of the degree-k
 *  family (the bound k, not the effective degree, fixes the number of
 *  theta coordinates downstream).
 */
class Polynomial {
public:
    /// Zero polynomial with bound k = 0.
    Polynomial() : coeffs_{0.0} {}

    /// Coefficients ascending; the bound is coeffs.size() - 1. Must be nonempty.
    explicit Polynomial(std::vector<double> coeffs);

    /// Zero polynomial with the given bound.
    static Polynomial zero(int k);

    /// Degree bound k (number of coefficients minus one).
    int bound() const { return static_cast<int>(coeffs_.size()) - 1; }

    /// Largest i with a_i != 0, or -1 for the identically-zero polynomial.
    int degree() const;

    bool is_zero() const { return degree() < 0; }

    /// True if the effective degree is <= 0.
    bool is_constant() const { return degree() <= 0; }

    double operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

    std::span<const double> coeffs() const { return coeffs_; }

    /// Horner evaluation of F(x).
    double eval(double x) const;

    /// sum |a_i| |x|^i; the natural magnitude scale of eval(x) for error bounds.
    double eval_scale(double x) const;

    /// Coefficients of dF/dx (bound k-1, or the zero constant for k = 0).
    Polynomial derivative() const;

    /// Coefficients of F(x - x0) (Taylor shift / binomial expansion).
    Polynomial translate(double x0) const;

    /// a_i *= s for all i.
    Polynomial scaled(double s) const;

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<double> coeffs_;
};

/// Q(x) = 1 - F(x)^2, with bound 2k.
Polynomial one_minus_square(const Polynomial& f);

/// Q_h(x) = 2h - F(x)^2, the radicand of the level-h fundamental equation.
Polynomial level_radicand(const Polynomial& f, double h);

/** Synthetic division of p by (x - root): returns the quotient, discarding
 *  the remainder. Meaningful when root approximates a real root of p; the
 *  dropped remainder is then rounding-level small.
 */
Polynomial deflate(const Polynomial& p, double root);

}  // namespace jetgeo
