#include "jetgeo/holonomy.hpp"

#include "jetgeo/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jetgeo {

namespace {

void require_bounded(const HillInterval& h) {
    if (!h.bounded())
        throw UnboundedIntervalError("operation requires a compact Hill interval");
}

void require_regular(const HillInterval& h) {
    require_bounded(h);
    if (h.geo_class != GeoClass::XPeriodic)
        throw CriticalEndpointError(
            "integral diverges: the interval has a critical endpoint where F' vanishes");
}

std::vector<double> factorials(int k) {
    std::vector<double> f(static_cast<std::size_t>(k) + 1, 1.0);
    for (int i = 2; i <= k; ++i) f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
}

// Newton polish of the root of qt nearest u0 (an endpoint of a recentered
// interval, so u0 = -/+1, where simple roots of qt are well-conditioned).
// Returns the best point seen; falls back to u0 if the iteration drifts.
double refine_endpoint_root(const Polynomial& qt, double u0) {
    const Polynomial dqt = qt.derivative();
    double best = u0;
    double best_res = std::abs(qt.eval(u0));
    double r = u0;
    for (int it = 0; it < 60; ++it) {
        const double d = dqt.eval(r);
        if (d == 0.0) break;
        const double next = r - qt.eval(r) / d;
        if (std::abs(next - u0) > 0.25) break;
        const double res = std::abs(qt.eval(next));
        if (res < best_res) {
            best = next;
            best_res = res;
        }
        if (next == r) break;
        r = next;
    }
    return best;
}

// Pi of the positivity interval of `q` that deforms `base` under a small
// perturbation, identified by containing the midpoint of `base`.
double action_of_deformed(const Polynomial& q, const HillInterval& base,
                          const QuadratureSpec& spec) {
    const double mid = base.midpoint();
    for (const auto& seg : detail::radicand_intervals(q)) {
        if (seg.lo <= mid && mid <= seg.hi) {
            if (!seg.lo_simple || !seg.hi_simple)
                throw PerturbationLeavesClassError(
                    "perturbed radicand interval acquires a critical endpoint");
            return 2.0 *
                   integrate_singular([](double) { return 1.0; }, q, seg.lo, seg.hi,
                                      SingularWeight::Sqrt, spec)
                       .value;
        }
    }
    throw PerturbationLeavesClassError(
        "perturbation destroys the Hill interval: no positivity interval survives around "
        "its midpoint");
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NoPeriodicGeodesics: return "no-periodic-geodesics";
        case Verdict::DegenerateInput: return "degenerate-input";
    }
    throw std::logic_error("unreachable verdict");
}

double period(const HillInterval& h, const QuadratureSpec& spec) {
    require_regular(h);
    const Polynomial q = one_minus_square(h.f);
    return 2.0 * integrate_singular([](double) { return 1.0; }, q, h.lo, h.hi,
                                    SingularWeight::InverseSqrt, spec)
                     .value;
}

double action(const HillInterval& h, const QuadratureSpec& spec) {
    require_bounded(h);
    const Polynomial q = one_minus_square(h.f);
    return 2.0 * integrate_singular([](double) { return 1.0; }, q, h.lo, h.hi,
                                    SingularWeight::Sqrt, spec)
                     .value;
}

std::vector<double> holonomy(const HillInterval& h, const QuadratureSpec& spec) {
    require_regular(h);
    const Polynomial q = one_minus_square(h.f);
    const int k = h.f.bound();
    const auto fact = factorials(k);
    std::vector<double> dtheta(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        const auto g = [&](double x) { return std::pow(x, i) * h.f.eval(x); };
        const double integral =
            integrate_singular(g, q, h.lo, h.hi, SingularWeight::InverseSqrt, spec).value;
        dtheta[static_cast<std::size_t>(i)] = 2.0 * integral / fact[static_cast<std::size_t>(i)];
    }
    return dtheta;
}

double inner_product(const Polynomial& p1, const Polynomial& p2, const HillInterval& h,
                     const QuadratureSpec& spec) {
    require_regular(h);
    const Polynomial q = one_minus_square(h.f);
    const auto g = [&](double x) { return p1.eval(x) * p2.eval(x); };
    return integrate_singular(g, q, h.lo, h.hi, SingularWeight::InverseSqrt, spec).value;
}

Matrix gram_matrix(const HillInterval& h, const QuadratureSpec& spec) {
    require_regular(h);
    const Polynomial q = one_minus_square(h.f);
    const int k = h.f.bound();
    std::vector<double> moment(2 * static_cast<std::size_t>(k) + 1);
    for (int s = 0; s <= 2 * k; ++s) {
        const auto g = [&](double x) { return std::pow(x, s); };
        moment[static_cast<std::size_t>(s)] =
            integrate_singular(g, q, h.lo, h.hi, SingularWeight::InverseSqrt, spec).value;
    }
    Matrix gram(static_cast<std::size_t>(k) + 1, std::vector<double>(static_cast<std::size_t>(k) + 1));
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                moment[static_cast<std::size_t>(i + j)];
    return gram;
}

double dPi_dh(const HillInterval& h, double eps, const QuadratureSpec& spec) {
    require_regular(h);
    if (!(eps > 0.0)) throw std::invalid_argument("dPi_dh: eps must be positive");
    const double plus = action_of_deformed(level_radicand(h.f, 0.5 + eps), h, spec);
    const double minus = action_of_deformed(level_radicand(h.f, 0.5 - eps), h, spec);
    return (plus - minus) / (2.0 * eps);
}

double dPi_da(const HillInterval& h, int index, double eps, const QuadratureSpec& spec) {
    require_regular(h);
    if (!(eps > 0.0)) throw std::invalid_argument("dPi_da: eps must be positive");
    if (index < 0 || index > h.f.bound())
        throw std::invalid_argument("dPi_da: coefficient index out of range");
    auto perturbed = [&](double delta) {
        std::vector<double> c(h.f.coeffs().begin(), h.f.coeffs().end());
        c[static_cast<std::size_t>(index)] += delta;
        return one_minus_square(Polynomial(std::move(c)));
    };
    const double plus = action_of_deformed(perturbed(+eps), h, spec);
    const double minus = action_of_deformed(perturbed(-eps), h, spec);
    return (plus - minus) / (2.0 * eps);
}

PeriodReport certify_interval(const HillInterval& h, const QuadratureSpec& spec) {
    PeriodReport rep;
    rep.interval = h;
    if (!h.bounded()) {
        rep.verdict = Verdict::DegenerateInput;
        return rep;
    }
    require_regular(h);  // EndpointCritical -> CriticalEndpointError

    const int k = h.f.bound();
    const auto fact = factorials(k);

    // The whole certificate is computed on the recentered instance
    // ft(u) = F(c + s u), u in [-1, 1], c the midpoint and s the half-width
    // of the interval.  Two distinct failures of raw monomial arithmetic
    // force this: on a narrow off-center interval the monomial Gram matrix
    // is numerically indefinite although the true one is positive definite
    // (the basis change is a congruence, so certifying the recentered matrix
    // is the same statement), and for intervals far from the origin the
    // radicand 1 - F^2 cannot even be EVALUATED to relative accuracy in
    // doubles (coefficient scale ~|x|^2k against values <= 1), which starves
    // the quadrature.  ft has modest coefficients, so 1 - ft^2 evaluates to
    // full precision on [-1, 1].
    const double c = h.midpoint();
    const double s = 0.5 * h.width();
    const std::size_t n = static_cast<std::size_t>(k) + 1;

    // b: coefficients of ft(u) = F(c + s u).
    const Polynomial shifted = h.f.translate(-c);  // F(x + c)
    std::vector<double> b(n, 0.0);
    {
        double spow = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = shifted[static_cast<int>(i)] * spow;
            spow *= s;
        }
    }
    const Polynomial ft(b);
    const Polynomial qt = one_minus_square(ft);

    // The interval endpoints map to u = -/+1 only up to the accuracy of the
    // x-space root find, which is poor in exactly the cases above; polish
    // the endpoint roots of qt in u-space, where they are well-conditioned.
    const double ulo = refine_endpoint_root(qt, -1.0);
    const double uhi = refine_endpoint_root(qt, +1.0);

    // dx = s du turns every x-integral into an u-integral against qt.
    rep.period = 2.0 * s *
                 integrate_singular([](double) { return 1.0; }, qt, ulo, uhi,
                                    SingularWeight::InverseSqrt, spec)
                     .value;
    rep.action = 2.0 * s *
                 integrate_singular([](double) { return 1.0; }, qt, ulo, uhi,
                                    SingularWeight::Sqrt, spec)
                     .value;

    // Moments of the recentered basis, x-measure: mt_m = int u^m / sqrt(Q) dx.
    std::vector<double> moment(2 * static_cast<std::size_t>(k) + 1);
    for (int m = 0; m <= 2 * k; ++m) {
        const auto g = [&](double u) { return std::pow(u, m); };
        moment[static_cast<std::size_t>(m)] =
            s * integrate_singular(g, qt, ulo, uhi, SingularWeight::InverseSqrt, spec).value;
    }
    rep.gram = Matrix(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rep.gram[i][j] = moment[i + j];
    rep.lambda_min = symmetric_eigen(rep.gram).values.front();

    // Recentered holonomy moments ht_i = int u^i F / sqrt(Q) dx by direct
    // quadrature, then a second, independent way through the moments:
    // ht_i = (G b)_i.
    std::vector<double> ht(n);
    for (int i = 0; i <= k; ++i) {
        const auto g = [&](double u) { return std::pow(u, i) * ft.eval(u); };
        ht[static_cast<std::size_t>(i)] =
            s * integrate_singular(g, qt, ulo, uhi, SingularWeight::InverseSqrt, spec).value;
    }
    std::vector<double> gb(n, 0.0);
    rep.gram_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        double acc_scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += rep.gram[i][j] * b[j];
            acc_scale += std::abs(rep.gram[i][j] * b[j]);
        }
        gb[i] = acc;
        rep.gram_residual =
            std::max(rep.gram_residual, std::abs(ht[i] - acc) / std::max(1.0, acc_scale));
    }
    if (rep.gram_residual > 1e-8)
        throw InconsistentComputationError(
            "holonomy disagrees with its Gram-matrix prediction (scaled residual " +
            std::to_string(rep.gram_residual) + ")");

    // Map both holonomy vectors back to the monomial basis:
    // int x^i F / sqrt(Q) dx = sum_j C(i,j) c^(i-j) s^j ht_j
    // and i! dtheta_i / 2 is the left-hand side (delta_theta from the
    // quadrature moments ht, delta_theta_gram from the predictions G b).
    // The binomial sum is dominated by whichever of |c|, s is larger, so it
    // does not cancel.
    std::vector<double> cpow(n, 1.0), spows(n, 1.0);
    for (std::size_t m = 1; m < n; ++m) {
        cpow[m] = cpow[m - 1] * c;
        spows[m] = spows[m - 1] * s;
    }
    std::vector<std::vector<double>> binom(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        binom[i][0] = 1.0;
        for (std::size_t j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j < i ? binom[i - 1][j] : 0.0);
    }
    rep.delta_theta.assign(n, 0.0);
    rep.delta_theta_gram.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc_q = 0.0;
        double acc_p = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = binom[i][j] * cpow[i - j] * spows[j];
            acc_q += w * ht[j];
            acc_p += w * gb[j];
        }
        rep.delta_theta[i] = 2.0 * acc_q / fact[i];
        rep.delta_theta_gram[i] = 2.0 * acc_p / fact[i];
    }

    // L = Pi + sum_i i! a_i dtheta_i.  Checked in its recentered form
    // L = Pi + 2 sum_j b_j ht_j -- the identical statement after the exact
    // substitution x = c + s u, but free of the catastrophic cancellation
    // the monomial form suffers when the interval sits far from the origin
    // (x^i F huge, sum tiny).
    double ident = rep.action;
    for (std::size_t j = 0; j < n; ++j) ident += 2.0 * b[j] * ht[j];
    rep.identity_residual = std::abs(rep.period - ident);
    if (rep.identity_residual > 1e-8 * std::max(1.0, rep.period))
        throw InconsistentComputationError(
            "period fails the action identity (residual " +
            std::to_string(rep.identity_residual) + ")");

    if (!(rep.lambda_min > 0.0))
        throw InconsistentComputationError(
            "Gram matrix of a positive-width interval must be positive definite");

    // |(G b)| >= lambda_min |b| pushes at least one adapted holonomy
    // component 2 ht_i / i! away from zero:
    // max_i |2 ht_i / i!| >= 2 lambda_min |b| / (k! sqrt(k+1)).
    double b_norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) b_norm_sq += b[i] * b[i];
    rep.margin = 2.0 * rep.lambda_min * std::sqrt(b_norm_sq) /
                 (fact[n - 1] * std::sqrt(static_cast<double>(n)));
    double dtheta_max = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        dtheta_max = std::max(dtheta_max, std::abs(2.0 * ht[i] / fact[i]));
    if (dtheta_max < 0.5 * rep.margin)
        throw InconsistentComputationError(
            "holonomy vector is smaller than the nondegeneracy margin allows");

    rep.verdict = Verdict::NoPeriodicGeodesics;
    return rep;
}

std::vector<PeriodReport> certify(const Polynomial& f, const QuadratureSpec& spec) {
    std::vector<PeriodReport> out;
    for (const HillInterval& h : hill_intervals(f)) out.push_back(certify_interval(h, spec));
    return out;
}

}  // namespace jetgeo
