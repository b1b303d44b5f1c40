#include "jetgeo/roots.hpp"

#include "jetgeo/errors.hpp"
#include "jetgeo/polynomial.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using jetgeo::Polynomial;
using jetgeo::real_roots;

TEST_CASE("simple dyadic roots are recovered to near machine precision") {
    const std::vector<double> expected{-1.5, -0.25, 0.5, 2.0};
    const auto rl = real_roots(testsupport::from_roots(expected, -3.0));
    REQUIRE(rl.roots.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(rl.roots[i].location == doctest::Approx(expected[i]).epsilon(1e-13));
        CHECK(rl.roots[i].simple);
    }
}

TEST_CASE("double root is found once and flagged non-simple") {
    const auto rl = real_roots(testsupport::from_roots({-0.5, -0.5, 1.25}));
    REQUIRE(rl.roots.size() == 2);
    CHECK(rl.roots[0].location == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK_FALSE(rl.roots[0].simple);
    CHECK(rl.roots[1].location == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(rl.roots[1].simple);
}

TEST_CASE("triple root keeps its location through the multiplicity polish") {
    const auto rl = real_roots(testsupport::from_roots({0.5, 0.5, 0.5, -1.0}));
    REQUIRE(rl.roots.size() == 2);
    CHECK(rl.roots[0].location == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rl.roots[0].simple);
    CHECK(rl.roots[1].location == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_FALSE(rl.roots[1].simple);
}

TEST_CASE("Chebyshev roots match their closed form") {
    const int n = 8;
    const auto rl = real_roots(testsupport::chebyshev(n));
    REQUIRE(rl.roots.size() == static_cast<std::size_t>(n));
    const double pi = std::acos(-1.0);
    for (int j = 0; j < n; ++j) {
        // Ascending order: largest angle first.
        const double expected = std::cos((2.0 * (n - j) - 1.0) * pi / (2.0 * n));
        CHECK(rl.roots[static_cast<std::size_t>(j)].location ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(rl.roots[static_cast<std::size_t>(j)].simple);
    }
}

TEST_CASE("the oscillation radicand 1 - T_n^2 mixes simple and double roots") {
    // 1 - T_n(x)^2 = (1 - x^2) U_{n-1}(x)^2: simple roots at +-1, double
    // roots at cos(j pi / n) for j = 1..n-1.
    const int n = 6;
    const Polynomial tn = testsupport::chebyshev(n);
    const auto rl = real_roots(jetgeo::one_minus_square(tn));
    REQUIRE(rl.roots.size() == static_cast<std::size_t>(n) + 1);
    const double pi = std::acos(-1.0);
    for (int j = 0; j <= n; ++j) {
        const double expected = std::cos((n - j) * pi / n);
        const bool simple = (j == 0 || j == n);
        const auto& r = rl.roots[static_cast<std::size_t>(j)];
        CHECK(r.location == doctest::Approx(expected).epsilon(simple ? 1e-12 : 1e-8));
        CHECK(r.simple == simple);
    }
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(real_roots(Polynomial::zero(4)), jetgeo::IdenticallyZeroError);
    CHECK(real_roots(Polynomial({3.0})).roots.empty());
    CHECK(real_roots(Polynomial({1.0, 0.0, 1.0})).roots.empty());  // x^2 + 1
}

TEST_CASE("scaling the polynomial does not move its roots") {
    const Polynomial p = testsupport::from_roots({-0.75, 0.125, 1.5});
    const auto base = real_roots(p);
    const auto scaled = real_roots(p.scaled(1e-8));
    REQUIRE(base.roots.size() == scaled.roots.size());
    for (std::size_t i = 0; i < base.roots.size(); ++i)
        CHECK(base.roots[i].location ==
              doctest::Approx(scaled.roots[i].location).epsilon(1e-13));
}

TEST_CASE("random polynomials: residuals, ordering, parity") {
    std::mt19937_64 rng(20240010);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> c(2 + static_cast<std::size_t>(rng() % 6));
        for (double& v : c) v = testsupport::uniform(rng, -2.0, 2.0);
        if (std::abs(c.back()) < 0.1) c.back() = 0.5;  // keep the degree honest
        const Polynomial p(c);
        const auto rl = real_roots(p);
        if (p.degree() % 2 == 1) CHECK(rl.roots.size() >= 1);
        for (std::size_t i = 0; i < rl.roots.size(); ++i) {
            const double r = rl.roots[i].location;
            CHECK(std::abs(p.eval(r)) <= 1e-12 * std::max(1.0, p.eval_scale(r)));
            if (i > 0) CHECK(r > rl.roots[i - 1].location);
        }
    }
}
