#include "jetgeo/config.hpp"
#include "jetgeo/errors.hpp"
#include "jetgeo/hill.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

using jetgeo::ConfigError;
using jetgeo::GeoClass;
using jetgeo::hill_intervals;
using jetgeo::parse_scenario;
using jetgeo::Polynomial;
using jetgeo::ScenarioConfig;
using jetgeo::select_interval;

TEST_CASE("minimal scenario fills every default") {
    const ScenarioConfig cfg = parse_scenario(R"({"k": 1, "coefficients": [0.0, 1.0]})");
    CHECK(cfg.k == 1);
    CHECK(cfg.coefficients == std::vector<double>{0.0, 1.0});
    CHECK(!cfg.interval_hint.has_value());
    CHECK(cfg.quadrature.rel_tol == doctest::Approx(1e-10));
    CHECK(cfg.quadrature.abs_tol == doctest::Approx(1e-12));
    CHECK(cfg.quadrature.max_level == 12);
    CHECK(cfg.ode_tol == doctest::Approx(1e-10));
    CHECK(cfg.samples_per_period == 512);
    CHECK(cfg.seed == 0);
    CHECK(cfg.polynomial().degree() == 1);
}

TEST_CASE("every field parses and overrides its default") {
    const ScenarioConfig cfg = parse_scenario(R"({
        "k": 2,
        "coefficients": [0.5, 0.0, -1.0],
        "interval_hint": [-0.25, 0.75],
        "quadrature": {"rel_tol": 1e-12, "abs_tol": 1e-14, "max_level": 13},
        "ode_tol": 1e-9,
        "samples_per_period": 64,
        "seed": 42
    })");
    CHECK(cfg.k == 2);
    CHECK(cfg.coefficients.size() == 3);
    REQUIRE(cfg.interval_hint.has_value());
    CHECK((*cfg.interval_hint)[0] == doctest::Approx(-0.25));
    CHECK((*cfg.interval_hint)[1] == doctest::Approx(0.75));
    CHECK(cfg.quadrature.rel_tol == doctest::Approx(1e-12));
    CHECK(cfg.quadrature.abs_tol == doctest::Approx(1e-14));
    CHECK(cfg.quadrature.max_level == 13);
    CHECK(cfg.ode_tol == doctest::Approx(1e-9));
    CHECK(cfg.samples_per_period == 64);
    CHECK(cfg.seed == 42);
}

TEST_CASE("malformed scenarios are rejected loudly") {
    // not JSON at all
    CHECK_THROWS_AS(parse_scenario("not json"), ConfigError);
    // top level must be an object
    CHECK_THROWS_AS(parse_scenario("[1, 2]"), ConfigError);
    // unknown keys, top level and nested
    CHECK_THROWS_AS(parse_scenario(R"({"k": 1, "coefficients": [0, 1], "tyop": 3})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"k": 1, "coefficients": [0, 1], "quadrature": {"reltol": 1e-9}})"),
        ConfigError);
    // required keys
    CHECK_THROWS_AS(parse_scenario(R"({"coefficients": [0, 1]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"k": 1})"), ConfigError);
    // type errors
    CHECK_THROWS_AS(parse_scenario(R"({"k": 1.5, "coefficients": [0, 1]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"k": 1, "coefficients": [0, "x"]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"k": 1, "coefficients": [0, 1], "seed": -3})"),
                    ConfigError);
    // invariant violations
    CHECK_THROWS_AS(parse_scenario(R"({"k": 2, "coefficients": [0, 1]})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"k": -1, "coefficients": []})"), ConfigError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"k": 1, "coefficients": [0, 1], "samples_per_period": 8})"),
        ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"k": 1, "coefficients": [0, 1], "ode_tol": 0.0})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"k": 1, "coefficients": [0, 1], "interval_hint": [1.0, -1.0]})"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_scenario(R"({"k": 1, "coefficients": [0, 1], "interval_hint": [0.0]})"),
        ConfigError);
    // k beyond the supported bound
    std::string big = R"({"k": 16, "coefficients": [)";
    for (int i = 0; i <= 16; ++i)
        big += (i ? ", 0" : "0");
    big += "]}";
    CHECK_THROWS_AS(parse_scenario(big), ConfigError);
}

TEST_CASE("load_scenario reads files and reports missing ones") {
    CHECK_THROWS_AS(jetgeo::load_scenario("/nonexistent/path/cfg.json"), ConfigError);
    const std::string path = "test_config_scenario.json";
    {
        std::ofstream out(path);
        out << R"({"k": 1, "coefficients": [0, 1], "seed": 9})";
    }
    const ScenarioConfig cfg = jetgeo::load_scenario(path);
    CHECK(cfg.seed == 9);
    std::remove(path.c_str());
}

TEST_CASE("interval selection honors hints and falls back sensibly") {
    // 1.25 T_3 has three x-periodic bands
    const Polynomial f({0.0, -3.75, 0.0, 5.0});
    const auto bands = hill_intervals(f);
    REQUIRE(bands.size() == 3);

    // no hint: the first band
    CHECK(&select_interval(bands, std::nullopt) == &bands[0]);
    // hint midpoint inside the middle band
    const std::array<double, 2> middle{bands[1].lo + 0.01, bands[1].hi - 0.01};
    CHECK(&select_interval(bands, middle) == &bands[1]);
    // hint whose midpoint falls in the gap but which overlaps the last band
    const std::array<double, 2> skewed{bands[2].lo - 0.2 * bands[2].width(),
                                       bands[2].lo + 0.01 * bands[2].width()};
    const auto& picked = select_interval(bands, skewed);
    CHECK(picked.lo == doctest::Approx(bands[2].lo));
    // hint far outside every band
    CHECK_THROWS_AS(select_interval(bands, std::array<double, 2>{50.0, 60.0}), ConfigError);

    // chambers only: fall back to the first interval so callers surface
    // the class-specific error
    const Polynomial t2({-1.0, 0.0, 2.0});
    const auto chambers = hill_intervals(t2);
    REQUIRE(chambers.size() == 2);
    CHECK(&select_interval(chambers, std::nullopt) == &chambers[0]);
    CHECK(chambers[0].geo_class == GeoClass::EndpointCritical);
}
