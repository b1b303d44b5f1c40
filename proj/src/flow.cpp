#include "jetgeo/flow.hpp"

#include "jetgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetgeo {

namespace {

// Dormand-Prince 5(4) tableau (the system is autonomous, so the c column is
// never materialized).
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output weights for the quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

using Vec = std::vector<double>;

struct RhsContext {
    const Polynomial& f;
    Polynomial df;
    std::vector<double> inv_factorial;  // 1/i! for i = 0..k
};

void rhs(const RhsContext& ctx, const Vec& y, Vec& dy) {
    const double x = y[0];
    const double px = y[1];
    const double fx = ctx.f.eval(x);
    dy[0] = px;
    dy[1] = -fx * ctx.df.eval(x);
    double xpow = 1.0;
    for (std::size_t i = 0; i < ctx.inv_factorial.size(); ++i) {
        dy[2 + i] = xpow * ctx.inv_factorial[i] * fx;
        xpow *= x;
    }
}

double energy(const Polynomial& f, const Vec& y) {
    const double fx = f.eval(y[0]);
    return y[1] * y[1] + fx * fx;
}

// Quartic Hermite-type interpolant over one accepted step.
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    Vec r1, r2, r3, r4, r5;

    void eval(double t, Vec& out) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        for (std::size_t i = 0; i < r1.size(); ++i)
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    }
};

}  // namespace

std::vector<double> vector_field(const Polynomial& f, const std::vector<double>& y) {
    const std::size_t dim = static_cast<std::size_t>(f.bound()) + 3;
    if (y.size() != dim)
        throw std::invalid_argument("vector_field: state must have length k + 3");
    RhsContext ctx{f, f.derivative(), {}};
    ctx.inv_factorial.resize(static_cast<std::size_t>(f.bound()) + 1);
    double fact = 1.0;
    for (std::size_t i = 0; i < ctx.inv_factorial.size(); ++i) {
        if (i > 1) fact *= static_cast<double>(i);
        ctx.inv_factorial[i] = 1.0 / fact;
    }
    Vec dy(dim);
    rhs(ctx, y, dy);
    return dy;
}

double level_momentum(const Polynomial& f, double x) {
    const double fx = f.eval(x);
    const double q = (1.0 - fx) * (1.0 + fx);
    if (q < -1e-12 * std::max(1.0, fx * fx))
        throw OutsideHillError("x lies outside the region F^2 <= 1");
    return std::sqrt(std::max(q, 0.0));
}

Trajectory integrate_geodesic(const Polynomial& f, const State& start, double t_end,
                              double ode_tol, int sample_count) {
    if (!(ode_tol > 0.0))
        throw std::invalid_argument("integrate_geodesic: ode_tol must be positive");
    if (sample_count < 2)
        throw std::invalid_argument("integrate_geodesic: need at least two samples");
    const std::size_t n_theta = static_cast<std::size_t>(f.bound()) + 1;
    if (start.thetas.size() != n_theta)
        throw std::invalid_argument("integrate_geodesic: start carries " +
                                    std::to_string(start.thetas.size()) + " angles, F needs " +
                                    std::to_string(n_theta));
    if (!(t_end > start.t))
        throw std::invalid_argument("integrate_geodesic: t_end must exceed the start time");

    RhsContext ctx{f, f.derivative(), {}};
    ctx.inv_factorial.resize(n_theta);
    double fact = 1.0;
    for (std::size_t i = 0; i < n_theta; ++i) {
        if (i > 1) fact *= static_cast<double>(i);
        ctx.inv_factorial[i] = 1.0 / fact;
    }

    const std::size_t dim = n_theta + 2;
    Vec y(dim);
    y[0] = start.x;
    y[1] = start.px;
    std::copy(start.thetas.begin(), start.thetas.end(), y.begin() + 2);

    const double e0 = energy(f, y);
    if (std::abs(e0 - 1.0) > 1e-9)
        throw BadInitialEnergyError("initial state violates px^2 + F(x)^2 = 1 by " +
                                    std::to_string(std::abs(e0 - 1.0)));

    Trajectory traj;
    traj.samples.reserve(static_cast<std::size_t>(sample_count));

    const double span = t_end - start.t;
    const double dt_sample = span / static_cast<double>(sample_count - 1);
    auto sample_time = [&](int j) {
        return (j == sample_count - 1) ? t_end : start.t + dt_sample * static_cast<double>(j);
    };
    auto push_sample = [&](double t, const Vec& v) {
        State s;
        s.t = t;
        s.x = v[0];
        s.px = v[1];
        s.thetas.assign(v.begin() + 2, v.end());
        traj.samples.push_back(std::move(s));
    };
    int next_sample = 0;
    push_sample(start.t, y);
    ++next_sample;

    Vec k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim), ynew(dim);
    DenseStep dense;
    dense.r1.resize(dim);
    dense.r2.resize(dim);
    dense.r3.resize(dim);
    dense.r4.resize(dim);
    dense.r5.resize(dim);
    Vec interp(dim);

    rhs(ctx, y, k1);  // FSAL seed
    double t = start.t;
    double h = std::min(0.1, span / 100.0);
    const double h_min = 1e-14 * std::max(1.0, std::abs(span));
    const std::size_t max_steps = 2'000'000;

    for (std::size_t step = 0; step < max_steps && t < t_end; ++step) {
        h = std::min(h, t_end - t);
        if (h < h_min)
            throw StepSizeUnderflowError("step size collapsed to " + std::to_string(h) +
                                         " at t = " + std::to_string(t));

        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(ctx, ytmp, k2);
        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(ctx, ytmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(ctx, ytmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(ctx, ytmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(ctx, ytmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(ctx, ynew, k7);

        double err_sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = ode_tol + ode_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err_sq += (ei / sc) * (ei / sc);
        }
        const double err = std::sqrt(err_sq / static_cast<double>(dim));

        if (err <= 1.0) {
            dense.t0 = t;
            dense.h = h;
            for (std::size_t i = 0; i < dim; ++i) {
                const double ydiff = ynew[i] - y[i];
                dense.r1[i] = y[i];
                dense.r2[i] = ydiff;
                dense.r3[i] = h * k1[i] - ydiff;
                dense.r4[i] = ydiff - h * k7[i] - dense.r3[i];
                dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                   d6 * k6[i] + d7 * k7[i]);
            }
            const double t_new = t + h;
            while (next_sample < sample_count && sample_time(next_sample) <= t_new) {
                const double ts = sample_time(next_sample);
                dense.eval(ts, interp);
                push_sample(ts, interp);
                ++next_sample;
            }
            t = t_new;
            y.swap(ynew);
            k1.swap(k7);
            ++traj.stats.accepted;
            traj.stats.max_energy_drift =
                std::max(traj.stats.max_energy_drift, std::abs(energy(f, y) - e0));
        } else {
            ++traj.stats.rejected;
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
    }

    if (t < t_end)
        throw NoConvergenceError("integrator exceeded its step budget before reaching t_end");
    // Rounding in the sample grid can leave the final time un-emitted.
    while (next_sample < sample_count) {
        dense.eval(sample_time(next_sample), interp);
        push_sample(sample_time(next_sample), interp);
        ++next_sample;
    }
    return traj;
}

}  // namespace jetgeo
