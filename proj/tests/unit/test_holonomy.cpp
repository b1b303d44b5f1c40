#include "jetgeo/holonomy.hpp"

#include "jetgeo/errors.hpp"
#include "jetgeo/flow.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using jetgeo::certify;
using jetgeo::certify_interval;
using jetgeo::HillInterval;
using jetgeo::hill_intervals;
using jetgeo::PeriodReport;
using jetgeo::Polynomial;
using jetgeo::QuadratureSpec;
using jetgeo::Verdict;

namespace {
const double kPi = std::acos(-1.0);
const QuadratureSpec kTight{1e-13, 1e-15, 14};
}  // namespace

TEST_CASE("linear F reproduces every closed-form certificate quantity") {
    const Polynomial f({0.0, 1.0});
    const HillInterval h = hill_intervals(f).front();

    CHECK(jetgeo::period(h, kTight) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(jetgeo::action(h, kTight) == doctest::Approx(kPi).epsilon(1e-12));

    const auto dtheta = jetgeo::holonomy(h, kTight);
    REQUIRE(dtheta.size() == 2);
    CHECK(dtheta[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(dtheta[1] == doctest::Approx(kPi).epsilon(1e-12));

    CHECK(jetgeo::inner_product(Polynomial({1.0}), Polynomial({1.0}), h, kTight) ==
          doctest::Approx(kPi).epsilon(1e-12));
    CHECK(jetgeo::inner_product(Polynomial({1.0}), Polynomial({0.0, 1.0}), h, kTight) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(jetgeo::inner_product(Polynomial({0.0, 1.0}), Polynomial({0.0, 1.0}), h, kTight) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-12));

    const auto gram = jetgeo::gram_matrix(h, kTight);
    REQUIRE(gram.size() == 2);
    CHECK(gram[0][0] == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(gram[0][1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(gram[1][0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(gram[1][1] == doctest::Approx(0.5 * kPi).epsilon(1e-12));

    const PeriodReport rep = certify_interval(h, kTight);
    CHECK(rep.verdict == Verdict::NoPeriodicGeodesics);
    CHECK(rep.period == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(rep.action == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(rep.lambda_min == doctest::Approx(0.5 * kPi).epsilon(1e-12));
    CHECK(rep.margin == doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rep.gram_residual <= 1e-10);
    CHECK(rep.identity_residual <= 1e-10);
    CHECK(rep.delta_theta_gram[1] == doctest::Approx(kPi).epsilon(1e-11));
}

TEST_CASE("verdicts are spelled for reports") {
    CHECK(jetgeo::to_string(Verdict::NoPeriodicGeodesics) == "no-periodic-geodesics");
    CHECK(jetgeo::to_string(Verdict::DegenerateInput) == "degenerate-input");
}

TEST_CASE("integral guards reject the degenerate interval classes") {
    const HillInterval line = hill_intervals(Polynomial({0.25})).front();
    CHECK_THROWS_AS(jetgeo::period(line, kTight), jetgeo::UnboundedIntervalError);
    CHECK_THROWS_AS(jetgeo::action(line, kTight), jetgeo::UnboundedIntervalError);
    CHECK_THROWS_AS(jetgeo::holonomy(line, kTight), jetgeo::UnboundedIntervalError);

    const HillInterval chamber = hill_intervals(testsupport::chebyshev(2)).front();
    CHECK_THROWS_AS(jetgeo::period(chamber, kTight), jetgeo::CriticalEndpointError);
    CHECK_THROWS_AS(jetgeo::holonomy(chamber, kTight), jetgeo::CriticalEndpointError);
    CHECK_THROWS_AS(jetgeo::gram_matrix(chamber, kTight), jetgeo::CriticalEndpointError);
    // The action integral has no singularity; it is defined even there.
    CHECK(jetgeo::action(chamber, kTight) > 0.0);
}

TEST_CASE("holonomy transforms covariantly under translation of F") {
    // Asymmetric F so every holonomy component is nonzero.
    const Polynomial f({0.0, 1.0, 0.3});  // F = x + 0.3 x^2
    const double c = 0.5;
    const Polynomial g = f.translate(c);

    const HillInterval hf = hill_intervals(f).front();
    const HillInterval hg = hill_intervals(g).front();
    CHECK(hg.lo == doctest::Approx(hf.lo + c).epsilon(1e-12));
    CHECK(hg.hi == doctest::Approx(hf.hi + c).epsilon(1e-12));

    CHECK(jetgeo::period(hg, kTight) == doctest::Approx(jetgeo::period(hf, kTight)).epsilon(1e-10));
    CHECK(jetgeo::action(hg, kTight) == doctest::Approx(jetgeo::action(hf, kTight)).epsilon(1e-10));

    const auto d = jetgeo::holonomy(hf, kTight);
    const auto dm = jetgeo::holonomy(hg, kTight);
    REQUIRE(d.size() == 3);
    REQUIRE(dm.size() == 3);
    CHECK(std::abs(d[0]) > 0.1);  // the instance is genuinely asymmetric
    // dtheta'_i = sum_{j<=i} c^(i-j)/(i-j)! dtheta_j
    CHECK(dm[0] == doctest::Approx(d[0]).epsilon(1e-9));
    CHECK(dm[1] == doctest::Approx(c * d[0] + d[1]).epsilon(1e-9));
    CHECK(dm[2] == doctest::Approx(0.5 * c * c * d[0] + c * d[1] + d[2]).epsilon(1e-9));

    // Both instances also pass their own full certificates.
    CHECK(certify_interval(hf, kTight).verdict == Verdict::NoPeriodicGeodesics);
    CHECK(certify_interval(hg, kTight).verdict == Verdict::NoPeriodicGeodesics);
}

TEST_CASE("action derivative in the level recovers the period") {
    const Polynomial f({0.0, 1.0});
    const HillInterval h = hill_intervals(f).front();
    // Closed form: Pi(h) = 2 pi h exactly, so the difference quotient is
    // exact up to quadrature error.
    CHECK(jetgeo::dPi_dh(h, 1e-5, kTight) == doctest::Approx(2.0 * kPi).epsilon(1e-6));

    const Polynomial g({-0.5, 0.0, 1.0});
    const HillInterval hg = hill_intervals(g).front();
    const double L = jetgeo::period(hg, kTight);
    CHECK(jetgeo::dPi_dh(hg, 1e-5, kTight) == doctest::Approx(L).epsilon(1e-6));

    CHECK_THROWS_AS(jetgeo::dPi_dh(h, 0.0, kTight), std::invalid_argument);
    CHECK_THROWS_AS(jetgeo::dPi_dh(h, -1e-5, kTight), std::invalid_argument);
}

TEST_CASE("action derivative in each coefficient recovers minus the holonomy") {
    const Polynomial f({0.0, 1.0});
    const HillInterval h = hill_intervals(f).front();
    CHECK(jetgeo::dPi_da(h, 0, 1e-5, kTight) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(jetgeo::dPi_da(h, 1, 1e-5, kTight) == doctest::Approx(-kPi).epsilon(1e-6));

    const Polynomial g({-0.5, 0.0, 1.0});
    const HillInterval hg = hill_intervals(g).front();
    const auto dtheta = jetgeo::holonomy(hg, kTight);
    for (int i = 0; i <= 2; ++i) {
        const double fact = (i == 2) ? 2.0 : 1.0;
        CHECK(jetgeo::dPi_da(hg, i, 1e-5, kTight) ==
              doctest::Approx(-fact * dtheta[static_cast<std::size_t>(i)])
                  .scale(1.0)
                  .epsilon(1e-6));
    }

    CHECK_THROWS_AS(jetgeo::dPi_da(h, -1, 1e-5, kTight), std::invalid_argument);
    CHECK_THROWS_AS(jetgeo::dPi_da(h, 2, 1e-5, kTight), std::invalid_argument);
    CHECK_THROWS_AS(jetgeo::dPi_da(h, 0, 0.0, kTight), std::invalid_argument);
}

TEST_CASE("a level perturbation that pinches off the interval is refused") {
    // F nearly touches +1 at its interior maximum, so lowering the level by
    // 1e-5 splits the oval in two; neither half deforms the original.
    const Polynomial f({1.0 - 1e-6, 0.0, -1.0});
    const HillInterval h = hill_intervals(f).front();
    CHECK(h.geo_class == jetgeo::GeoClass::XPeriodic);
    CHECK_THROWS_AS(jetgeo::dPi_dh(h, 1e-5, kTight), jetgeo::PerturbationLeavesClassError);
}

TEST_CASE("certify handles the degenerate and critical families") {
    const auto line_reports = certify(Polynomial({0.25}), kTight);
    REQUIRE(line_reports.size() == 1);
    CHECK(line_reports.front().verdict == Verdict::DegenerateInput);
    CHECK(line_reports.front().delta_theta.empty());
    CHECK(line_reports.front().period == 0.0);

    CHECK_THROWS_AS(certify(testsupport::chebyshev(2), kTight), jetgeo::CriticalEndpointError);
    CHECK_THROWS_AS(certify(Polynomial({2.0, 0.0, 1.0}), kTight), jetgeo::NoHillIntervalError);
}

TEST_CASE("certify covers every oscillation band of a scaled Chebyshev") {
    const Polynomial f = testsupport::chebyshev(3).scaled(1.25);
    const auto reports = certify(f, kTight);
    REQUIRE(reports.size() == 3);
    for (std::size_t b = 0; b < reports.size(); ++b) {
        const PeriodReport& r = reports[b];
        CHECK(r.verdict == Verdict::NoPeriodicGeodesics);
        CHECK(r.period > 0.0);
        CHECK(r.action > 0.0);
        CHECK(r.action < r.period);  // sqrt(1-F^2) <= 1/sqrt(1-F^2) pointwise
        CHECK(r.lambda_min > 0.0);
        CHECK(r.margin > 0.0);
        REQUIRE(r.delta_theta.size() == 4);
        // margin bounds the largest holonomy component in the adapted basis
        // u = (x - c)/s; recompute those components by independent quadrature.
        const double c = r.interval.midpoint();
        const double s = 0.5 * r.interval.width();
        const Polynomial q = jetgeo::one_minus_square(f);
        double dmax = 0.0;
        double fact = 1.0;
        for (int j = 0; j <= 3; ++j) {
            if (j > 0) fact *= j;
            const double ht =
                jetgeo::integrate_singular(
                    [&](double x) { return std::pow((x - c) / s, j) * f.eval(x); }, q,
                    r.interval.lo, r.interval.hi, jetgeo::SingularWeight::InverseSqrt, kTight)
                    .value;
            dmax = std::max(dmax, std::abs(2.0 * ht / fact));
        }
        CHECK(dmax >= 0.5 * r.margin);
        if (b > 0) CHECK(reports[b - 1].interval.hi <= r.interval.lo);
    }
}

TEST_CASE("holonomy by quadrature matches holonomy by geodesic integration") {
    // Two fully independent computational paths: singular quadrature of the
    // period integrals vs. runge-kutta transport of the angles over one loop.
    const Polynomial f({-0.5, 0.0, 1.0});
    const HillInterval h = hill_intervals(f).front();
    const double L = jetgeo::period(h, kTight);
    const auto dtheta = jetgeo::holonomy(h, kTight);

    jetgeo::State start;
    start.x = h.lo;
    start.px = 0.0;
    start.thetas = {0.0, 0.0, 0.0};
    const auto traj = jetgeo::integrate_geodesic(f, start, L, 1e-11, 33);
    const jetgeo::State& last = traj.samples.back();

    CHECK(last.x == doctest::Approx(h.lo).epsilon(1e-6));
    CHECK(last.px == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    const std::vector<double> fact{1.0, 1.0, 2.0};
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(fact[i] * last.thetas[i] ==
              doctest::Approx(fact[i] * dtheta[i]).scale(1.0).epsilon(1e-7));
}
